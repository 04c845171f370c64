// src/mixer.cc

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

#include "mcse/mixer.h"

#include <cmath>
#include <stdexcept>

namespace mcse {

std::uint64_t DeriveSeed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t x = index + 1;
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return base_seed ^ x;
}

UtteranceAudio MixAtSnr(const MixSpec& spec, MixInfo* info) {
  const int channels = spec.clean.num_channels();
  if (spec.noise.num_channels() != channels)
    throw std::invalid_argument("mixer: clean and noise channel counts differ");
  if (spec.noise.sample_rate != spec.clean.sample_rate)
    throw std::invalid_argument("mixer: clean and noise sample rates differ");
  if (spec.ref_channel < 1 || spec.ref_channel > channels)
    throw std::invalid_argument("mixer: reference channel out of range");
  const std::int64_t clean_len = spec.clean.num_samples();
  const std::int64_t noise_len = spec.noise.num_samples();
  if (noise_len < clean_len)
    throw std::invalid_argument("mixer: noise recording shorter than the clean one");

  SeededRng rng(spec.seed);
  const std::int64_t offset =
      noise_len > clean_len ? rng.Index(noise_len - clean_len + 1) : 0;

  const int ref = spec.ref_channel - 1;
  const double clean_power = spec.clean.samples.row(ref).squaredNorm();
  const double noise_power =
      spec.noise.samples.row(ref).segment(offset, clean_len).squaredNorm();
  if (!(clean_power > 0.0))
    throw std::invalid_argument("mixer: clean signal silent at the reference channel");
  if (!(noise_power > 0.0))
    throw std::invalid_argument("mixer: noise signal silent at the reference channel");

  const double gain =
      std::sqrt(clean_power / (noise_power * std::pow(10.0, spec.target_snr_db / 10.0)));

  UtteranceAudio out;
  out.sample_rate = spec.clean.sample_rate;
  out.samples = spec.clean.samples +
                gain * spec.noise.samples.middleCols(offset, clean_len);
  if (info) {
    info->gain = gain;
    info->noise_offset = offset;
  }
  return out;
}

double SampleSnr(double lo_db, double hi_db, std::uint64_t seed) {
  if (lo_db > hi_db) throw std::invalid_argument("mixer: inverted SNR range");
  if (lo_db == hi_db) return lo_db;
  return SeededRng(seed).Uniform(lo_db, hi_db);
}

}  // namespace mcse
