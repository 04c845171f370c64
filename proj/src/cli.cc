// src/cli.cc

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

#include "mcse/cli.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcse/audio_io.h"
#include "mcse/enhance.h"
#include "mcse/mixer.h"
#include "mcse/rover.h"
#include "mcse/wer.h"

namespace mcse {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

// Environment override for --some-option of subcommand sub: MCSE_SUB_SOME_OPTION.
std::string EnvName(const std::string& subcommand, const std::string& option) {
  std::string name = "MCSE_" + subcommand + "_" + option;
  for (char& c : name) {
    if (c == '-') c = '_';
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

WindowKind ParseWindow(const std::string& name) {
  if (name == "sqrt-hann") return WindowKind::kSqrtHann;
  if (name == "hann") return WindowKind::kHann;
  if (name == "rect") return WindowKind::kRectangular;
  throw std::invalid_argument("window: expected sqrt-hann, hann or rect");
}

SampleFormat ParseFormat(const std::string& name) {
  if (name == "pcm16") return SampleFormat::kPcm16;
  if (name == "float32") return SampleFormat::kFloat32;
  throw std::invalid_argument("format: expected pcm16 or float32");
}

SnrMode ParseSnrMode(const std::string& name) {
  if (name == "per-bin") return SnrMode::kPerBin;
  if (name == "broadband") return SnrMode::kBroadband;
  throw std::invalid_argument("snr-mode: expected per-bin or broadband");
}

struct EnhanceOptions {
  std::string manifest;
  std::string report = "-";
  std::string format = "pcm16";
  std::string window = "sqrt-hann";
  std::string snr_mode = "per-bin";
  int frame_len = 512;
  int hop = 128;
  int fft_size = 512;
  int edge_frames = 10;
  double phi0_ratio = 0.1;
  double phi0_abs = 0.0;
  int ref_channel = 1;
  int jobs = 1;
};

struct MixOptions {
  std::string manifest;
  std::string report = "-";
  std::vector<std::string> clean;
  std::vector<std::string> noise;
  std::string out;
  std::string format = "pcm16";
  double snr = 0.0;
  bool snr_set = false;
  std::string snr_range;
  std::uint64_t seed = 0;
  int ref_channel = 1;
};

struct RoverOptions {
  std::vector<std::string> inputs;
  std::string out = "-";
  double alpha = 0.7;
  double null_confidence = 0.5;
  bool no_case_fold = false;
  bool strip_punct = false;
};

struct ScoreOptions {
  std::string ref;
  std::string hyp;
  std::string out = "-";
  std::string tsv;
  bool by_tag = false;
};

// Output sink that only touches the filesystem once the final text is known,
// so a failing subcommand never leaves partial files behind.
class TextSink {
 public:
  explicit TextSink(std::string path) : path_(std::move(path)) {}

  std::ostream& stream() { return buffer_; }

  void Commit() {
    if (path_ == "-") {
      std::cout << buffer_.str();
      return;
    }
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path_);
    out << buffer_.str();
    if (!out) throw std::runtime_error("write failed: " + path_);
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

EnhanceConfig BuildEnhanceConfig(const EnhanceOptions& o) {
  EnhanceConfig config;
  config.stft.frame_len = o.frame_len;
  config.stft.hop = o.hop;
  config.stft.fft_size = o.fft_size;
  config.stft.window = ParseWindow(o.window);
  config.n_edge_frames = o.edge_frames;
  config.phi0_ratio = o.phi0_ratio;
  config.phi0_abs = o.phi0_abs;
  config.ref_channel = o.ref_channel;
  config.snr_mode = ParseSnrMode(o.snr_mode);
  return config;
}

int RunEnhance(const EnhanceOptions& o) {
  EnhanceConfig config = BuildEnhanceConfig(o);
  ValidateEnhanceConfig(config);
  const SampleFormat format = ParseFormat(o.format);
  if (o.jobs < 1) throw std::invalid_argument("jobs: must be >= 1");
  if (o.manifest.empty()) throw std::invalid_argument("manifest: required");
  const std::vector<ManifestEntry> entries = ParseManifest(o.manifest);

  CorpusReport report = EnhanceCorpus(entries, config, format, o.jobs);
  TextSink sink(o.report);
  WriteCorpusReport(sink.stream(), report);
  sink.Commit();
  if (report.failures > 0) {
    std::fprintf(stderr, "runtime error: %d of %zu utterances failed (see report)\n",
                 report.failures, entries.size());
    return kExitRuntime;
  }
  return kExitOk;
}

UtteranceAudio LoadChannels(const std::vector<std::string>& paths) {
  if (paths.size() == 1) return ReadWav(paths.front());
  std::vector<UtteranceAudio> parts;
  parts.reserve(paths.size());
  for (const auto& p : paths) parts.push_back(ReadWav(p));
  return MergeChannels(parts);
}

std::vector<std::string> SplitList(const std::string& field) {
  std::vector<std::string> items;
  std::stringstream ss(field);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

void ParseSnrRange(const std::string& text, double* lo, double* hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("snr-range: expected lo:hi");
  try {
    *lo = std::stod(text.substr(0, colon));
    *hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("snr-range: expected numeric lo:hi");
  }
  if (*lo > *hi) throw std::invalid_argument("snr-range: lo exceeds hi");
}

int RunMix(const MixOptions& o) {
  const SampleFormat format = ParseFormat(o.format);
  double range_lo = 0.0, range_hi = 0.0;
  const bool range_mode = !o.snr_range.empty();
  if (range_mode) ParseSnrRange(o.snr_range, &range_lo, &range_hi);
  if (range_mode == o.snr_set)
    throw std::invalid_argument("snr: give exactly one of --snr or --snr-range");

  const bool manifest_mode = !o.manifest.empty();
  if (manifest_mode == !o.out.empty())
    throw std::invalid_argument("out: give exactly one of --manifest or --out");
  if (!manifest_mode && (o.clean.empty() || o.noise.empty()))
    throw std::invalid_argument("clean/noise: required without --manifest");

  struct Job {
    std::string id;
    std::string out;
    std::vector<std::string> clean;
    std::vector<std::string> noise;
  };
  std::vector<Job> jobs;
  if (manifest_mode) {
    for (auto& entry : ParseManifest(o.manifest)) {
      if (entry.inputs.size() != 2)
        throw std::invalid_argument(
            "manifest: mix rows need utterance-id, output, clean-list, noise-list");
      jobs.push_back({entry.id, entry.output, SplitList(entry.inputs[0]),
                      SplitList(entry.inputs[1])});
    }
  } else {
    jobs.push_back({"-", o.out, o.clean, o.noise});
  }

  TextSink sink(manifest_mode ? o.report : "-");
  char line[256];
  std::snprintf(line, sizeof(line), "# seed=%llu\n",
                static_cast<unsigned long long>(o.seed));
  sink.stream() << line
                << "utt_id\tsnr_db\tgain\tnoise_offset\tsamples\toutput\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::uint64_t utt_seed = DeriveSeed(o.seed, static_cast<std::uint64_t>(i));
    const double snr = range_mode
                           ? SampleSnr(range_lo, range_hi, DeriveSeed(utt_seed, 0))
                           : o.snr;
    MixSpec spec;
    spec.clean = LoadChannels(jobs[i].clean);
    spec.noise = LoadChannels(jobs[i].noise);
    spec.target_snr_db = snr;
    spec.ref_channel = o.ref_channel;
    spec.seed = DeriveSeed(utt_seed, 1);
    MixInfo info;
    UtteranceAudio mixed = MixAtSnr(spec, &info);
    WriteWav(mixed, jobs[i].out, format);
    std::snprintf(line, sizeof(line), "%s\t%.9g\t%.9g\t%lld\t%lld\t%s\n",
                  jobs[i].id.c_str(), snr, info.gain,
                  static_cast<long long>(info.noise_offset),
                  static_cast<long long>(mixed.num_samples()), jobs[i].out.c_str());
    sink.stream() << line;
  }
  sink.Commit();
  return kExitOk;
}

int RunRover(const RoverOptions& o) {
  if (o.inputs.empty()) throw std::invalid_argument("in: need at least one file");
  if (o.alpha < 0.0 || o.alpha > 1.0)
    throw std::invalid_argument("alpha: must be in [0, 1]");
  if (o.null_confidence < 0.0 || o.null_confidence > 1.0)
    throw std::invalid_argument("null-conf: must be in [0, 1]");

  RoverConfig config;
  config.alpha = o.alpha;
  config.null_confidence = o.null_confidence;
  config.case_fold = !o.no_case_fold;
  config.strip_punct = o.strip_punct;

  // System order is input order; utterances are the union of all inputs.
  std::vector<std::map<std::string, Hypothesis>> systems;
  systems.reserve(o.inputs.size());
  std::map<std::string, int> utterances;
  for (const auto& path : o.inputs) {
    systems.push_back(ReadHypothesisFile(path, path, config));
    for (const auto& [id, hyp] : systems.back()) utterances[id] = 0;
  }

  TextSink sink(o.out);
  for (const auto& [id, unused] : utterances) {
    std::vector<Hypothesis> present;
    for (const auto& system : systems) {
      auto it = system.find(id);
      if (it != system.end()) present.push_back(it->second);
    }
    WriteHypothesisLine(sink.stream(), id, Combine(present, config));
  }
  sink.Commit();
  return kExitOk;
}

int RunScore(const ScoreOptions& o) {
  if (o.ref.empty()) throw std::invalid_argument("ref: required");
  if (o.hyp.empty()) throw std::invalid_argument("hyp: required");
  const auto references = ReadTrnFile(o.ref);
  const auto hypotheses = ReadTrnFile(o.hyp);
  WerReport report = ScoreCorpus(references, hypotheses, o.by_tag);

  TextSink sink(o.out);
  WriteReportTable(sink.stream(), report);
  sink.Commit();
  if (!o.tsv.empty()) {
    TextSink tsv(o.tsv);
    WriteReportTsv(tsv.stream(), report);
    tsv.Commit();
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"mcse: multichannel speech enhancement, mixing, ROVER and WER tools"};
  app.set_config("--config", "", "key=value config file; flags override file values");
  app.require_subcommand(0, 1);

  auto add = [](CLI::App* sub, const std::string& name, auto& value,
                const std::string& description) {
    return sub->add_option(name, value, description)
        ->envname(EnvName(sub->get_name(), name.substr(2)))
        ->capture_default_str();
  };

  EnhanceOptions enh;
  CLI::App* enhance = app.add_subcommand(
      "enhance", "Batch-enhance a manifest of multichannel utterances");
  add(enhance, "--manifest", enh.manifest,
      "TSV manifest: utterance-id, output path, input file(s)");
  add(enhance, "--report", enh.report, "Diagnostics TSV path ('-' = stdout)");
  add(enhance, "--format", enh.format, "Output sample format: pcm16|float32");
  add(enhance, "--frame-len", enh.frame_len, "Analysis frame length in samples");
  add(enhance, "--hop", enh.hop, "Frame hop in samples");
  add(enhance, "--fft-size", enh.fft_size, "FFT size (>= frame length, even)");
  add(enhance, "--window", enh.window, "Window: sqrt-hann|hann|rect");
  add(enhance, "--edge-frames", enh.edge_frames,
      "Noise statistics frames taken from each utterance edge");
  add(enhance, "--phi0-ratio", enh.phi0_ratio,
      "Desired residual noise level as a fraction of the mean noise power");
  add(enhance, "--phi0-abs", enh.phi0_abs,
      "Absolute desired residual noise level (overrides --phi0-ratio when > 0)");
  add(enhance, "--ref-channel", enh.ref_channel, "Reference microphone (1-based)");
  add(enhance, "--snr-mode", enh.snr_mode, "Input SNR estimate: per-bin|broadband");
  add(enhance, "--jobs", enh.jobs, "Parallel utterance workers");

  MixOptions mix;
  CLI::App* mix_cmd =
      app.add_subcommand("mix", "Mix clean speech with noise at a target SNR");
  add(mix_cmd, "--manifest", mix.manifest,
      "TSV manifest: utterance-id, output, clean-list, noise-list (comma-separated)");
  add(mix_cmd, "--report", mix.report, "Mix report TSV path ('-' = stdout)");
  mix_cmd->add_option("--clean", mix.clean, "Clean input file(s), one per channel")
      ->envname(EnvName("mix", "clean"));
  mix_cmd->add_option("--noise", mix.noise, "Noise input file(s), one per channel")
      ->envname(EnvName("mix", "noise"));
  add(mix_cmd, "--out", mix.out, "Output file (single-utterance mode)");
  add(mix_cmd, "--format", mix.format, "Output sample format: pcm16|float32");
  mix_cmd->add_option("--snr", mix.snr, "Target SNR in dB at the reference channel")
      ->envname(EnvName("mix", "snr"));
  add(mix_cmd, "--snr-range", mix.snr_range, "Uniform random SNR range lo:hi in dB");
  add(mix_cmd, "--seed", mix.seed, "Base seed for SNR draws and noise offsets");
  add(mix_cmd, "--ref-channel", mix.ref_channel, "Reference channel (1-based)");

  RoverOptions rover;
  CLI::App* rover_cmd =
      app.add_subcommand("rover", "Combine recognition hypotheses by voting");
  rover_cmd->add_option("--in", rover.inputs, "Hypothesis files, one per system (order matters)")
      ->envname(EnvName("rover", "in"));
  add(rover_cmd, "--out", rover.out, "Voted output path ('-' = stdout)");
  add(rover_cmd, "--alpha", rover.alpha, "Weight of vote frequency vs confidence");
  add(rover_cmd, "--null-conf", rover.null_confidence, "Confidence of the NULL word");
  rover_cmd->add_flag("--no-case-fold", rover.no_case_fold, "Keep token case");
  rover_cmd->add_flag("--strip-punct", rover.strip_punct, "Strip punctuation from tokens");

  ScoreOptions score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Score hypothesis transcripts against references");
  add(score_cmd, "--ref", score.ref, "Reference trn file: `token ... (utterance-id)`");
  add(score_cmd, "--hyp", score.hyp, "Hypothesis trn file");
  add(score_cmd, "--out", score.out, "Report path ('-' = stdout)");
  add(score_cmd, "--tsv", score.tsv, "Also write a machine-readable TSV report here");
  score_cmd->add_flag("--by-tag", score.by_tag,
                      "Break results down by _BUS/_CAF/_PED/_STR id suffix");

  std::string defaults_out = "-";
  CLI::App* defaults_cmd =
      app.add_subcommand("defaults", "Write the default configuration as key=value text");
  defaults_cmd->add_option("--out", defaults_out, "Destination ('-' = stdout)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (enhance->parsed()) return RunEnhance(enh);
    if (mix_cmd->parsed()) {
      mix.snr_set = mix_cmd->count("--snr") > 0;
      return RunMix(mix);
    }
    if (rover_cmd->parsed()) return RunRover(rover);
    if (score_cmd->parsed()) return RunScore(score);
    if (defaults_cmd->parsed()) {
      TextSink sink(defaults_out);
      sink.stream() << app.config_to_str(true, true);
      sink.Commit();
      return kExitOk;
    }
    std::cout << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const FileNotFoundError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace mcse
