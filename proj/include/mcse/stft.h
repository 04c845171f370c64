// include/mcse/stft.h

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

#ifndef MCSE_STFT_H_
#define MCSE_STFT_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "mcse/audio_io.h"

namespace mcse {

enum class WindowKind { kRectangular, kHann, kSqrtHann };

// Analysis/synthesis framing. The same window kind is used on both sides;
// the pair must satisfy the constant-overlap-add condition (checked by
// ValidateStftConfig). The default is 32 ms frames at 16 kHz with 75%
// overlap and square-root Hann windows.
struct StftConfig {
  int frame_len = 512;
  int hop = 128;
  int fft_size = 512;
  WindowKind window = WindowKind::kSqrtHann;

  int num_bins() const { return fft_size / 2 + 1; }
};

// Throws std::invalid_argument if hop <= frame_len <= fft_size is violated,
// fft_size is odd, or the window pair deviates from constant overlap-add by
// more than 1e-10 relative.
void ValidateStftConfig(const StftConfig& config);

// Periodic window of the given length.
std::vector<double> MakeWindow(WindowKind kind, int length);

// Complex STFT tensor, channels x frames x bins. Only the K = fft_size/2 + 1
// non-negative-frequency bins of the real-input spectrum are stored; the
// remaining bins are implied by conjugate symmetry.
class MultichannelSpectrum {
 public:
  MultichannelSpectrum() = default;
  MultichannelSpectrum(int channels, int frames, int bins, int sample_rate = 0)
      : channels_(channels),
        frames_(frames),
        bins_(bins),
        sample_rate_(sample_rate),
        data_(static_cast<std::size_t>(channels) * frames * bins) {}

  int channels() const { return channels_; }
  int frames() const { return frames_; }
  int bins() const { return bins_; }
  int sample_rate() const { return sample_rate_; }
  void set_sample_rate(int rate) { sample_rate_ = rate; }

  std::complex<double>& at(int channel, int frame, int bin) {
    return data_[index(channel, frame, bin)];
  }
  const std::complex<double>& at(int channel, int frame, int bin) const {
    return data_[index(channel, frame, bin)];
  }

  // Contiguous run of all bins of one frame.
  std::complex<double>* frame_data(int channel, int frame) {
    return data_.data() + index(channel, frame, 0);
  }
  const std::complex<double>* frame_data(int channel, int frame) const {
    return data_.data() + index(channel, frame, 0);
  }

 private:
  std::size_t index(int channel, int frame, int bin) const {
    return (static_cast<std::size_t>(channel) * frames_ + frame) * bins_ + bin;
  }

  int channels_ = 0;
  int frames_ = 0;
  int bins_ = 0;
  int sample_rate_ = 0;
  std::vector<std::complex<double>> data_;
};

// Windowed FFT of every frame of every channel. The number of frames is
// L = 1 + floor((T - frame_len) / hop); throws std::invalid_argument if the
// utterance is shorter than one frame.
MultichannelSpectrum Analyze(const UtteranceAudio& audio,
                             const StftConfig& config);

// Weighted overlap-add reconstruction of a single-channel spectrum. The
// output covers the analyzable span frame_len + (L - 1) * hop. Throws
// std::invalid_argument if the spectrum has more than one channel or its bin
// count does not match the config.
UtteranceAudio Synthesize(const MultichannelSpectrum& spectrum,
                          const StftConfig& config);

}  // namespace mcse

#endif  // MCSE_STFT_H_
