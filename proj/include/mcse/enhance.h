// include/mcse/enhance.h

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

#ifndef MCSE_ENHANCE_H_
#define MCSE_ENHANCE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcse/audio_io.h"
#include "mcse/sdw_mwf.h"
#include "mcse/spatial_stats.h"
#include "mcse/stft.h"

namespace mcse {

struct EnhanceConfig {
  StftConfig stft;
  int n_edge_frames = 10;
  // phi_0 as a fraction of the mean per-bin noise power at the reference mic;
  // phi0_abs > 0 overrides the relative rule with an absolute level.
  double phi0_ratio = 0.1;
  double phi0_abs = 0.0;
  int ref_channel = 1;  // one-based channel index of the reference mic
  SnrMode snr_mode = SnrMode::kPerBin;
};

// Throws std::invalid_argument naming the offending key.
void ValidateEnhanceConfig(const EnhanceConfig& config);

struct EnhanceDiagnostics {
  double desired_noise_level = 0.0;
  double mean_tradeoff = 0.0;
  // Fraction of bins where the per-bin solve failed and the filter fell back
  // to the reference selector.
  double passthrough_fraction = 0.0;
  int frames = 0;
  int bins = 0;
};

struct EnhanceResult {
  UtteranceAudio audio;  // mono, same length and rate as the input
  EnhanceDiagnostics diag;
};

// Estimates statistics from the spectrum, derives the per-bin tradeoff and
// solves the filter for every bin. Solver failures degrade to the reference
// selector for that bin and are counted in *fallback_bins.
FilterBank ComputeFilterBank(const MultichannelSpectrum& spectrum,
                             const EnhanceConfig& config,
                             TradeoffParams* params_out = nullptr,
                             int* fallback_bins = nullptr);

// Full per-utterance chain: analyze, estimate, solve, filter, resynthesize.
// The output is zero-extended to the input length.
EnhanceResult EnhanceUtterance(const UtteranceAudio& audio,
                               const EnhanceConfig& config);

// One manifest record: utterance id, output path, then one or more input
// files (several mono files are stacked in order; a single file may be
// multichannel).
struct ManifestEntry {
  std::string id;
  std::string output;
  std::vector<std::string> inputs;
};

// Tab-separated manifest, one record per line; blank lines and lines starting
// with '#' are skipped.
std::vector<ManifestEntry> ParseManifest(const std::string& path);

struct UtteranceReportRow {
  std::string id;
  bool ok = false;
  std::string message;  // error description when !ok
  int channels = 0;
  std::int64_t samples_in = 0;
  std::int64_t samples_out = 0;
  EnhanceDiagnostics diag;
};

struct CorpusReport {
  std::vector<UtteranceReportRow> rows;  // sorted by utterance id
  int failures = 0;
};

// Enhances every manifest entry, writing one mono file per utterance.
// Per-utterance failures are recorded and the batch continues. Utterances are
// processed by up to `jobs` workers; the report is order-independent.
CorpusReport EnhanceCorpus(const std::vector<ManifestEntry>& entries,
                           const EnhanceConfig& config,
                           SampleFormat output_format, int jobs);

// Tab-separated report with a header line.
void WriteCorpusReport(std::ostream& os, const CorpusReport& report);

}  // namespace mcse

#endif  // MCSE_ENHANCE_H_
