// tests/test_stft.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcse/stft.h"
#include "test_util.h"

using namespace mcse;

namespace {

const StftConfig kDefault{};

double MaxAbsDiff(const MultichannelSpectrum& a, const MultichannelSpectrum& b) {
  double max_diff = 0.0;
  for (int m = 0; m < a.channels(); ++m)
    for (int l = 0; l < a.frames(); ++l)
      for (int k = 0; k < a.bins(); ++k)
        max_diff = std::max(max_diff, std::abs(a.at(m, l, k) - b.at(m, l, k)));
  return max_diff;
}

double MaxAbs(const MultichannelSpectrum& a) {
  double max_abs = 0.0;
  for (int m = 0; m < a.channels(); ++m)
    for (int l = 0; l < a.frames(); ++l)
      for (int k = 0; k < a.bins(); ++k)
        max_abs = std::max(max_abs, std::abs(a.at(m, l, k)));
  return max_abs;
}

}  // namespace

TEST_CASE("config validation enforces shape and overlap-add rules") {
  CHECK_NOTHROW(ValidateStftConfig(kDefault));

  StftConfig bad = kDefault;
  bad.hop = 600;
  CHECK_THROWS_AS(ValidateStftConfig(bad), std::invalid_argument);

  bad = kDefault;
  bad.fft_size = 500;  // < frame_len
  CHECK_THROWS_AS(ValidateStftConfig(bad), std::invalid_argument);

  // rectangular only satisfies overlap-add when hop divides frame_len
  StftConfig rect{512, 512, 512, WindowKind::kRectangular};
  CHECK_NOTHROW(ValidateStftConfig(rect));
  rect.hop = 100;
  CHECK_THROWS_AS(ValidateStftConfig(rect), std::invalid_argument);

  // plain Hann at 50% fails (squared window), at 75% passes
  StftConfig hann{512, 256, 512, WindowKind::kHann};
  CHECK_THROWS_AS(ValidateStftConfig(hann), std::invalid_argument);
  hann.hop = 128;
  CHECK_NOTHROW(ValidateStftConfig(hann));
}

TEST_CASE("all-zero audio analyzes to an all-zero spectrum") {
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples = Eigen::MatrixXd::Zero(2, 4000);
  MultichannelSpectrum spec = Analyze(audio, kDefault);
  CHECK(spec.channels() == 2);
  CHECK(spec.frames() == 1 + (4000 - 512) / 128);
  CHECK(spec.bins() == 257);
  CHECK(MaxAbs(spec) == 0.0);
}

TEST_CASE("exact-bin sinusoid concentrates under a rectangular window") {
  const int bin = 8;
  StftConfig rect{512, 512, 512, WindowKind::kRectangular};
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples.resize(1, 512);
  for (int t = 0; t < 512; ++t)
    audio.samples(0, t) = std::cos(2.0 * M_PI * bin * t / 512.0);

  MultichannelSpectrum spec = Analyze(audio, rect);
  const double peak = std::abs(spec.at(0, 0, bin));
  CHECK(peak == doctest::Approx(256.0).epsilon(1e-12));
  for (int k = 0; k < spec.bins(); ++k) {
    if (k == bin) continue;
    const double leak_db = 20.0 * std::log10(std::abs(spec.at(0, 0, k)) / peak + 1e-300);
    CHECK(leak_db < -300.0);
  }
}

TEST_CASE("analysis matches the direct DFT oracle") {
  auto rng = test::MakeRng(33);
  UtteranceAudio audio = test::RandomAudio(rng, 6, 2000);
  MultichannelSpectrum spec = Analyze(audio, kDefault);

  const auto window = MakeWindow(kDefault.window, kDefault.frame_len);
  double max_rel = 0.0;
  for (int m = 0; m < spec.channels(); ++m) {
    for (int l = 0; l < spec.frames(); ++l) {
      std::vector<double> frame(kDefault.fft_size, 0.0);
      for (int n = 0; n < kDefault.frame_len; ++n)
        frame[n] = audio.samples(m, l * kDefault.hop + n) * window[n];
      const auto oracle = test::NaiveRealDft(frame, spec.bins());
      double frame_scale = 0.0;
      for (const auto& v : oracle) frame_scale = std::max(frame_scale, std::abs(v));
      for (int k = 0; k < spec.bins(); ++k) {
        const double diff = std::abs(spec.at(m, l, k) - oracle[k]);
        if (frame_scale > 0.0) max_rel = std::max(max_rel, diff / frame_scale);
      }
    }
  }
  CHECK(max_rel < 1e-10);
}

TEST_CASE("DC and Nyquist bins stay real for real input") {
  auto rng = test::MakeRng(34);
  UtteranceAudio audio = test::RandomAudio(rng, 1, 1024);
  MultichannelSpectrum spec = Analyze(audio, kDefault);
  for (int l = 0; l < spec.frames(); ++l) {
    CHECK(spec.at(0, l, 0).imag() == 0.0);
    CHECK(spec.at(0, l, spec.bins() - 1).imag() == 0.0);
  }
}

TEST_CASE("round trip reconstructs the interior to 1e-8") {
  auto rng = test::MakeRng(35);
  UtteranceAudio audio = test::RandomAudio(rng, 1, 8192);
  MultichannelSpectrum spec = Analyze(audio, kDefault);
  UtteranceAudio back = Synthesize(spec, kDefault);

  const std::int64_t covered =
      kDefault.frame_len + static_cast<std::int64_t>(spec.frames() - 1) * kDefault.hop;
  REQUIRE(back.num_samples() == covered);
  // interior: skip one frame length at each end
  const std::int64_t skip = kDefault.frame_len;
  Eigen::VectorXd expected =
      audio.samples.row(0).segment(skip, covered - 2 * skip).transpose();
  Eigen::VectorXd actual =
      back.samples.row(0).segment(skip, covered - 2 * skip).transpose();
  CHECK(test::RelativeL2(actual, expected) <= 1e-8);
}

TEST_CASE("round trip also holds for the plain Hann window pair") {
  StftConfig hann{512, 128, 512, WindowKind::kHann};
  auto rng = test::MakeRng(36);
  UtteranceAudio audio = test::RandomAudio(rng, 1, 6000);
  UtteranceAudio back = Synthesize(Analyze(audio, hann), hann);
  const std::int64_t covered = back.num_samples();
  const std::int64_t skip = hann.frame_len;
  Eigen::VectorXd expected =
      audio.samples.row(0).segment(skip, covered - 2 * skip).transpose();
  Eigen::VectorXd actual =
      back.samples.row(0).segment(skip, covered - 2 * skip).transpose();
  CHECK(test::RelativeL2(actual, expected) <= 1e-8);
}

TEST_CASE("all-zero spectrum synthesizes to silence") {
  MultichannelSpectrum spec(1, 5, kDefault.num_bins(), 16000);
  UtteranceAudio out = Synthesize(spec, kDefault);
  CHECK(out.samples.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-frame impulse is restored at the correct offset") {
  const int pos = 200;
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples = Eigen::MatrixXd::Zero(1, kDefault.frame_len);
  audio.samples(0, pos) = 1.0;

  MultichannelSpectrum spec = Analyze(audio, kDefault);
  REQUIRE(spec.frames() == 1);
  UtteranceAudio back = Synthesize(spec, kDefault);
  REQUIRE(back.num_samples() == kDefault.frame_len);
  for (int t = 0; t < kDefault.frame_len; ++t) {
    const double expected = t == pos ? 1.0 : 0.0;
    CHECK(std::abs(back.samples(0, t) - expected) < 1e-10);
  }
}

TEST_CASE("analysis is linear") {
  auto rng = test::MakeRng(37);
  UtteranceAudio x = test::RandomAudio(rng, 1, 3000);
  UtteranceAudio z = test::RandomAudio(rng, 1, 3000);
  const double a = 1.7, b = -0.4;
  UtteranceAudio combo;
  combo.sample_rate = x.sample_rate;
  combo.samples = a * x.samples + b * z.samples;

  MultichannelSpectrum sx = Analyze(x, kDefault);
  MultichannelSpectrum sz = Analyze(z, kDefault);
  MultichannelSpectrum sc = Analyze(combo, kDefault);

  MultichannelSpectrum expected(1, sx.frames(), sx.bins());
  for (int l = 0; l < sx.frames(); ++l)
    for (int k = 0; k < sx.bins(); ++k)
      expected.at(0, l, k) = a * sx.at(0, l, k) + b * sz.at(0, l, k);
  CHECK(MaxAbsDiff(sc, expected) <= 1e-12 * MaxAbs(sc));
}

TEST_CASE("per-frame energy obeys Parseval") {
  auto rng = test::MakeRng(38);
  UtteranceAudio audio = test::RandomAudio(rng, 1, 2048);
  MultichannelSpectrum spec = Analyze(audio, kDefault);
  const auto window = MakeWindow(kDefault.window, kDefault.frame_len);

  for (int l = 0; l < spec.frames(); ++l) {
    double time_energy = 0.0;
    for (int n = 0; n < kDefault.frame_len; ++n) {
      const double v = audio.samples(0, l * kDefault.hop + n) * window[n];
      time_energy += v * v;
    }
    double freq_energy = std::norm(spec.at(0, l, 0)) + std::norm(spec.at(0, l, spec.bins() - 1));
    for (int k = 1; k < spec.bins() - 1; ++k) freq_energy += 2.0 * std::norm(spec.at(0, l, k));
    freq_energy /= kDefault.fft_size;
    CHECK(std::abs(freq_energy - time_energy) <= 1e-10 * std::max(time_energy, 1e-30));
  }
}

TEST_CASE("analysis rejects too-short input and synthesis rejects bad shapes") {
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples = Eigen::MatrixXd::Zero(1, 100);
  CHECK_THROWS_AS(Analyze(audio, kDefault), std::invalid_argument);

  MultichannelSpectrum two_channels(2, 4, kDefault.num_bins());
  CHECK_THROWS_AS(Synthesize(two_channels, kDefault), std::invalid_argument);

  MultichannelSpectrum wrong_bins(1, 4, 129);
  CHECK_THROWS_AS(Synthesize(wrong_bins, kDefault), std::invalid_argument);
}
