// include/mcse/mixer.h

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

#ifndef MCSE_MIXER_H_
#define MCSE_MIXER_H_

#include <cstdint>
#include <random>

#include "mcse/audio_io.h"

namespace mcse {

// Reproducible uniform sampling. The engine is std::mt19937_64 (fully
// specified by the standard, so identical on every platform); doubles are
// mapped from the top 53 bits, so values never depend on the C++ library's
// distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [lo, hi].
  double Uniform(double lo, double hi) {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // Uniform index in [0, n); n must be positive.
  std::int64_t Index(std::int64_t n) {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    auto i = static_cast<std::int64_t>(u * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

// Per-utterance seed for corpus jobs: base_seed XOR splitmix64(index + 1).
// Keeps per-utterance streams independent of scheduling order.
std::uint64_t DeriveSeed(std::uint64_t base_seed, std::uint64_t index);

struct MixSpec {
  UtteranceAudio clean;
  UtteranceAudio noise;  // same channel count and rate; at least as long
  double target_snr_db = 0.0;
  int ref_channel = 1;  // one-based; SNR is measured at this channel
  std::uint64_t seed = 0;
};

struct MixInfo {
  double gain = 0.0;               // scale applied to the noise segment
  std::int64_t noise_offset = 0;   // start of the segment within the noise
};

// output = clean + g * noise_segment with
// g = sqrt(P_clean / (P_noise * 10^(snr/10))), both powers measured at the
// reference channel over the clean utterance's support; the same g scales
// all channels. The segment offset is drawn from SeededRng(spec.seed).
// Throws std::invalid_argument on shape/rate mismatch, a noise recording
// shorter than the clean one, or silence at the reference channel.
UtteranceAudio MixAtSnr(const MixSpec& spec, MixInfo* info = nullptr);

// One uniform draw in [lo_db, hi_db] from SeededRng(seed). Throws
// std::invalid_argument if lo_db > hi_db.
double SampleSnr(double lo_db, double hi_db, std::uint64_t seed);

}  // namespace mcse

#endif  // MCSE_MIXER_H_
