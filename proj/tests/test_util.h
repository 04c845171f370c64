// tests/test_util.h

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

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately use naive loops and brute-force enumeration so they stay
// independent of the library implementation they check.

#ifndef MCSE_TESTS_TEST_UTIL_H_
#define MCSE_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcse/audio_io.h"
#include "mcse/stft.h"

namespace mcse::test {

inline std::mt19937_64 MakeRng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double UniformDouble(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double Gaussian(std::mt19937_64& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline std::complex<double> GaussianComplex(std::mt19937_64& rng) {
  return {Gaussian(rng), Gaussian(rng)};
}

// Hermitian PSD matrix with bounded condition number: sample average of a few
// random rank-1 terms plus a small ridge.
inline Eigen::MatrixXcd RandomPsd(std::mt19937_64& rng, int dim, double ridge = 0.05) {
  const int terms = dim + 4;
  Eigen::MatrixXcd basis(dim, terms);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < terms; ++j) basis(i, j) = GaussianComplex(rng);
  Eigen::MatrixXcd psd = basis * basis.adjoint() / terms;
  psd += ridge * psd.real().trace() / dim * Eigen::MatrixXcd::Identity(dim, dim);
  return 0.5 * (psd + psd.adjoint());
}

// Quadratic objective the filter minimizes, evaluated from the covariances:
// estimation error of the target at the reference mic plus mu times the
// residual noise power.
inline double FilterObjective(const Eigen::VectorXcd& w,
                              const Eigen::MatrixXcd& target_psd,
                              const Eigen::MatrixXcd& noise_psd, double mu,
                              int ref_channel) {
  const Eigen::VectorXcd selector =
      Eigen::VectorXcd::Unit(target_psd.rows(), ref_channel);
  const std::complex<double> quad = w.adjoint() * target_psd * w;
  const std::complex<double> cross = w.adjoint() * target_psd * selector;
  const std::complex<double> direct = selector.adjoint() * target_psd * selector;
  const std::complex<double> noise = w.adjoint() * noise_psd * w;
  return quad.real() - 2.0 * cross.real() + direct.real() + mu * noise.real();
}

// O(N^2) DFT of a real frame; reference for the FFT path.
inline std::vector<std::complex<double>> NaiveRealDft(const std::vector<double>& frame,
                                                      int num_bins) {
  const int n = static_cast<int>(frame.size());
  std::vector<std::complex<double>> bins(num_bins);
  for (int k = 0; k < num_bins; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int t = 0; t < n; ++t) {
      const double phase = -2.0 * M_PI * k * t / n;
      acc += frame[t] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    bins[k] = acc;
  }
  return bins;
}

inline UtteranceAudio RandomAudio(std::mt19937_64& rng, int channels,
                                  std::int64_t samples, int rate = 16000,
                                  double amplitude = 0.1) {
  UtteranceAudio audio;
  audio.sample_rate = rate;
  audio.samples.resize(channels, samples);
  for (int m = 0; m < channels; ++m)
    for (std::int64_t t = 0; t < samples; ++t)
      audio.samples(m, t) = amplitude * Gaussian(rng);
  return audio;
}

// Point source observed over a small array: per-channel integer delay and
// gain applied to a common lowpass-filtered excitation, with silent margins
// at both ends so edge frames carry no target energy.
inline UtteranceAudio PointSourceScene(std::mt19937_64& rng, int channels,
                                       std::int64_t samples, std::int64_t margin,
                                       int rate = 16000) {
  std::vector<double> source(samples, 0.0);
  double state = 0.0;
  for (std::int64_t t = margin; t < samples - margin; ++t) {
    state = 0.9 * state + 0.1 * Gaussian(rng);
    source[t] = state;
  }
  // taper the ends of the active part to avoid frame-boundary clicks
  const std::int64_t ramp = std::min<std::int64_t>(256, (samples - 2 * margin) / 4);
  for (std::int64_t r = 0; r < ramp; ++r) {
    const double gain = static_cast<double>(r) / ramp;
    source[margin + r] *= gain;
    source[samples - margin - 1 - r] *= gain;
  }

  UtteranceAudio audio;
  audio.sample_rate = rate;
  audio.samples = Eigen::MatrixXd::Zero(channels, samples);
  for (int m = 0; m < channels; ++m) {
    const int delay = m == 0 ? 0 : static_cast<int>(rng() % 4);
    const double gain = m == 0 ? 1.0 : UniformDouble(rng, 0.7, 1.3);
    for (std::int64_t t = delay; t < samples; ++t)
      audio.samples(m, t) = gain * source[t - delay];
  }
  return audio;
}

// Brute-force minimum edit cost by exhaustive recursion (no DP table).
inline int BruteForceEditDistance(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b,
                                  std::size_t i = 0, std::size_t j = 0) {
  if (i == a.size()) return static_cast<int>(b.size() - j);
  if (j == b.size()) return static_cast<int>(a.size() - i);
  const int diag =
      BruteForceEditDistance(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
  const int del = BruteForceEditDistance(a, b, i + 1, j) + 1;
  const int ins = BruteForceEditDistance(a, b, i, j + 1) + 1;
  return std::min(diag, std::min(del, ins));
}

// Brute-force minimum cost of aligning a token sequence against a slot
// sequence where slot s accepts any token in slot_tokens[s] at cost 0.
inline int BruteForceSlotAlign(const std::vector<std::vector<std::string>>& slot_tokens,
                               const std::vector<std::string>& tokens,
                               std::size_t i = 0, std::size_t j = 0) {
  if (i == slot_tokens.size()) return static_cast<int>(tokens.size() - j);
  if (j == tokens.size()) return static_cast<int>(slot_tokens.size() - i);
  const bool match = std::find(slot_tokens[i].begin(), slot_tokens[i].end(),
                               tokens[j]) != slot_tokens[i].end();
  const int place = BruteForceSlotAlign(slot_tokens, tokens, i + 1, j + 1) + (match ? 0 : 1);
  const int del = BruteForceSlotAlign(slot_tokens, tokens, i + 1, j) + 1;
  const int ins = BruteForceSlotAlign(slot_tokens, tokens, i, j + 1) + 1;
  return std::min(place, std::min(del, ins));
}

class TempDir {
 public:
  explicit TempDir(const std::string& label) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / (label + "_" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp directory for " + label);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline double RelativeL2(const Eigen::VectorXd& actual, const Eigen::VectorXd& expected) {
  const double norm = expected.norm();
  return norm > 0 ? (actual - expected).norm() / norm : (actual - expected).norm();
}

}  // namespace mcse::test

#endif  // MCSE_TESTS_TEST_UTIL_H_
