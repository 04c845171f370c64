// src/enhance.cc

// Copyright 2026  mcse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mcse/enhance.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace mcse {

void ValidateEnhanceConfig(const EnhanceConfig& config) {
  ValidateStftConfig(config.stft);
  if (config.n_edge_frames < 1)
    throw std::invalid_argument("enhance: edge-frames must be >= 1");
  if (config.phi0_abs < 0.0)
    throw std::invalid_argument("enhance: phi0-abs must be > 0 when set");
  if (config.phi0_abs == 0.0 && !(config.phi0_ratio > 0.0))
    throw std::invalid_argument("enhance: phi0-ratio must be > 0");
  if (config.ref_channel < 1)
    throw std::invalid_argument("enhance: ref-channel must be >= 1");
}

namespace {

// Resolved phi_0: absolute override, or the configured fraction of the mean
// per-bin noise power. Noise-free utterances get a tiny positive floor so the
// tradeoff stays defined (all s then vanish).
double ResolveNoiseLevel(const EnhanceConfig& config, const SpatialStats& stats) {
  if (config.phi0_abs > 0.0) return config.phi0_abs;
  const double mean_noise =
      std::accumulate(stats.ref_noise_power.begin(), stats.ref_noise_power.end(), 0.0) /
      std::max<std::size_t>(stats.ref_noise_power.size(), 1);
  const double level = config.phi0_ratio * mean_noise;
  return level > 0.0 ? level : std::numeric_limits<double>::min();
}

}  // namespace

FilterBank ComputeFilterBank(const MultichannelSpectrum& spectrum,
                             const EnhanceConfig& config,
                             TradeoffParams* params_out, int* fallback_bins) {
  ValidateEnhanceConfig(config);
  const int channels = spectrum.channels();
  if (config.ref_channel > channels)
    throw std::invalid_argument("enhance: ref-channel exceeds channel count");
  const int ref = config.ref_channel - 1;

  SpatialStats stats = EstimateSpatialStats(spectrum, config.n_edge_frames);
  TradeoffParams params =
      ComputeTradeoff(stats, ResolveNoiseLevel(config, stats), config.snr_mode);

  FilterBank bank;
  bank.ref_channel = ref;
  bank.weights.resize(spectrum.bins());
  int fallbacks = 0;
  for (int k = 0; k < spectrum.bins(); ++k) {
    try {
      bank.weights[k] =
          SolveFilter(stats.target_psd[k], stats.noise_psd[k], params.tradeoff[k], ref);
    } catch (const SingularSystemError&) {
      bank.weights[k] = Eigen::VectorXcd::Unit(channels, ref);
      ++fallbacks;
    }
  }
  if (params_out) *params_out = std::move(params);
  if (fallback_bins) *fallback_bins = fallbacks;
  return bank;
}

EnhanceResult EnhanceUtterance(const UtteranceAudio& audio,
                               const EnhanceConfig& config) {
  MultichannelSpectrum spectrum = Analyze(audio, config.stft);
  TradeoffParams params;
  int fallbacks = 0;
  FilterBank bank = ComputeFilterBank(spectrum, config, &params, &fallbacks);
  UtteranceAudio mono = Synthesize(ApplyFilter(bank, spectrum), config.stft);

  EnhanceResult result;
  result.audio.sample_rate = audio.sample_rate;
  result.audio.samples = Eigen::MatrixXd::Zero(1, audio.num_samples());
  const std::int64_t copy_len = std::min(audio.num_samples(), mono.num_samples());
  result.audio.samples.row(0).head(copy_len) = mono.samples.row(0).head(copy_len);

  result.diag.desired_noise_level = params.desired_noise_level;
  result.diag.mean_tradeoff =
      std::accumulate(params.tradeoff.begin(), params.tradeoff.end(), 0.0) /
      std::max(params.num_bins(), 1);
  result.diag.passthrough_fraction =
      static_cast<double>(fallbacks) / std::max(spectrum.bins(), 1);
  result.diag.frames = spectrum.frames();
  result.diag.bins = spectrum.bins();
  return result;
}

std::vector<ManifestEntry> ParseManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open manifest: " + path);
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ManifestEntry entry;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, '\t')) {
      if (entry.id.empty())
        entry.id = field;
      else if (entry.output.empty())
        entry.output = field;
      else
        entry.inputs.push_back(field);
    }
    if (entry.id.empty() || entry.output.empty() || entry.inputs.empty())
      throw std::invalid_argument("manifest line " + std::to_string(line_no) +
                                  ": expected utterance-id, output, inputs");
    entries.push_back(std::move(entry));
  }
  return entries;
}

namespace {

UtteranceAudio LoadEntryAudio(const ManifestEntry& entry) {
  if (entry.inputs.size() == 1) return ReadWav(entry.inputs.front());
  std::vector<UtteranceAudio> parts;
  parts.reserve(entry.inputs.size());
  for (const auto& path : entry.inputs) parts.push_back(ReadWav(path));
  return MergeChannels(parts);
}

UtteranceReportRow ProcessEntry(const ManifestEntry& entry,
                                const EnhanceConfig& config,
                                SampleFormat output_format) {
  UtteranceReportRow row;
  row.id = entry.id;
  try {
    UtteranceAudio audio = LoadEntryAudio(entry);
    row.channels = audio.num_channels();
    row.samples_in = audio.num_samples();
    EnhanceResult result = EnhanceUtterance(audio, config);
    WriteWav(result.audio, entry.output, output_format);
    row.samples_out = result.audio.num_samples();
    row.diag = result.diag;
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.message = e.what();
  }
  return row;
}

}  // namespace

CorpusReport EnhanceCorpus(const std::vector<ManifestEntry>& entries,
                           const EnhanceConfig& config,
                           SampleFormat output_format, int jobs) {
  ValidateEnhanceConfig(config);
  CorpusReport report;
  report.rows.resize(entries.size());

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(entries.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) break;
      report.rows[i] = ProcessEntry(entries[i], config, output_format);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const UtteranceReportRow& a, const UtteranceReportRow& b) {
              return a.id < b.id;
            });
  for (const auto& row : report.rows)
    if (!row.ok) ++report.failures;
  return report;
}

void WriteCorpusReport(std::ostream& os, const CorpusReport& report) {
  os << "utt_id\tstatus\tchannels\tsamples_in\tsamples_out\tframes\tbins\t"
        "phi0\tmean_mu\tpassthrough_frac\tmessage\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  for (const auto& row : report.rows) {
    os << row.id << '\t' << (row.ok ? "ok" : "error") << '\t' << row.channels
       << '\t' << row.samples_in << '\t' << row.samples_out << '\t'
       << row.diag.frames << '\t' << row.diag.bins << '\t'
       << fmt(row.diag.desired_noise_level) << '\t' << fmt(row.diag.mean_tradeoff)
       << '\t' << fmt(row.diag.passthrough_fraction) << '\t' << row.message
       << '\n';
  }
}

}  // namespace mcse
