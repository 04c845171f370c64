// src/stft.cc

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

#include "mcse/stft.h"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace mcse {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution on private
// buffers is.
std::mutex& FftwMutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(int size) : size_(size) {
    std::lock_guard<std::mutex> lock(FftwMutex());
    time_ = fftw_alloc_real(size);
    freq_ = fftw_alloc_complex(size / 2 + 1);
    forward_ = fftw_plan_dft_r2c_1d(size, time_, freq_, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(size, freq_, time_, FFTW_ESTIMATE);
  }

  ~RealFft() {
    std::lock_guard<std::mutex> lock(FftwMutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
    fftw_free(time_);
    fftw_free(freq_);
  }

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  void Forward(const double* samples, std::complex<double>* bins) {
    for (int n = 0; n < size_; ++n) time_[n] = samples[n];
    fftw_execute(forward_);
    const int num_bins = size_ / 2 + 1;
    for (int k = 0; k < num_bins; ++k)
      bins[k] = std::complex<double>(freq_[k][0], freq_[k][1]);
  }

  // Unnormalized c2r divided by the transform size.
  void Inverse(const std::complex<double>* bins, double* samples) {
    const int num_bins = size_ / 2 + 1;
    for (int k = 0; k < num_bins; ++k) {
      freq_[k][0] = bins[k].real();
      freq_[k][1] = bins[k].imag();
    }
    fftw_execute(inverse_);
    const double scale = 1.0 / size_;
    for (int n = 0; n < size_; ++n) samples[n] = time_[n] * scale;
  }

 private:
  int size_;
  double* time_;
  fftw_complex* freq_;
  fftw_plan forward_;
  fftw_plan inverse_;
};

}  // namespace

std::vector<double> MakeWindow(WindowKind kind, int length) {
  std::vector<double> w(length);
  const double step = 2.0 * M_PI / length;
  for (int n = 0; n < length; ++n) {
    switch (kind) {
      case WindowKind::kRectangular:
        w[n] = 1.0;
        break;
      case WindowKind::kHann:
        w[n] = 0.5 - 0.5 * std::cos(step * n);
        break;
      case WindowKind::kSqrtHann:
        w[n] = std::sqrt(0.5 - 0.5 * std::cos(step * n));
        break;
    }
  }
  return w;
}

void ValidateStftConfig(const StftConfig& config) {
  if (config.hop < 1 || config.frame_len < 1 || config.fft_size < 1)
    throw std::invalid_argument("stft: frame_len, hop and fft_size must be positive");
  if (config.hop > config.frame_len || config.frame_len > config.fft_size)
    throw std::invalid_argument("stft: need hop <= frame_len <= fft_size");
  if (config.fft_size % 2 != 0)
    throw std::invalid_argument("stft: fft_size must be even");

  // Steady-state overlap-add sum of the analysis*synthesis window product,
  // evaluated at every offset modulo hop.
  const std::vector<double> w = MakeWindow(config.window, config.frame_len);
  double mean = 0.0;
  std::vector<double> sums(config.hop, 0.0);
  for (int r = 0; r < config.hop; ++r) {
    for (int n = r; n < config.frame_len; n += config.hop) sums[r] += w[n] * w[n];
    mean += sums[r];
  }
  mean /= config.hop;
  if (mean <= 0.0)
    throw std::invalid_argument("stft: window pair sums to zero");
  for (double s : sums) {
    if (std::abs(s - mean) > 1e-10 * mean)
      throw std::invalid_argument(
          "stft: window/hop pair violates the constant-overlap-add condition");
  }
}

MultichannelSpectrum Analyze(const UtteranceAudio& audio, const StftConfig& config) {
  ValidateStftConfig(config);
  const std::int64_t num_samples = audio.num_samples();
  if (num_samples < config.frame_len)
    throw std::invalid_argument("stft: utterance shorter than one frame");

  const int channels = audio.num_channels();
  const int frames =
      1 + static_cast<int>((num_samples - config.frame_len) / config.hop);
  const int bins = config.num_bins();
  const std::vector<double> window = MakeWindow(config.window, config.frame_len);

  MultichannelSpectrum spectrum(channels, frames, bins, audio.sample_rate);
  RealFft fft(config.fft_size);
  std::vector<double> buf(config.fft_size, 0.0);
  for (int m = 0; m < channels; ++m) {
    for (int l = 0; l < frames; ++l) {
      const std::int64_t offset = static_cast<std::int64_t>(l) * config.hop;
      for (int n = 0; n < config.frame_len; ++n)
        buf[n] = audio.samples(m, offset + n) * window[n];
      for (int n = config.frame_len; n < config.fft_size; ++n) buf[n] = 0.0;
      fft.Forward(buf.data(), spectrum.frame_data(m, l));
    }
  }
  return spectrum;
}

UtteranceAudio Synthesize(const MultichannelSpectrum& spectrum,
                          const StftConfig& config) {
  ValidateStftConfig(config);
  if (spectrum.channels() != 1)
    throw std::invalid_argument("stft: synthesize expects a single-channel spectrum");
  if (spectrum.bins() != config.num_bins())
    throw std::invalid_argument("stft: spectrum bin count inconsistent with fft_size");

  const int frames = spectrum.frames();
  const std::int64_t out_len =
      config.frame_len + static_cast<std::int64_t>(frames - 1) * config.hop;
  const std::vector<double> window = MakeWindow(config.window, config.frame_len);

  std::vector<double> acc(out_len, 0.0);
  std::vector<double> norm(out_len, 0.0);
  RealFft fft(config.fft_size);
  std::vector<double> buf(config.fft_size, 0.0);
  for (int l = 0; l < frames; ++l) {
    fft.Inverse(spectrum.frame_data(0, l), buf.data());
    const std::int64_t offset = static_cast<std::int64_t>(l) * config.hop;
    for (int n = 0; n < config.frame_len; ++n) {
      acc[offset + n] += window[n] * buf[n];
      norm[offset + n] += window[n] * window[n];
    }
  }

  double norm_max = 0.0;
  for (double v : norm) norm_max = std::max(norm_max, v);
  const double floor = 1e-12 * norm_max;

  UtteranceAudio out;
  out.sample_rate = spectrum.sample_rate();
  out.samples.resize(1, out_len);
  for (std::int64_t t = 0; t < out_len; ++t)
    out.samples(0, t) = norm[t] > floor ? acc[t] / norm[t] : 0.0;
  return out;
}

}  // namespace mcse
