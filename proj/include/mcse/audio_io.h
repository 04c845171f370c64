// include/mcse/audio_io.h

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

#ifndef MCSE_AUDIO_IO_H_
#define MCSE_AUDIO_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mcse {

// Multichannel utterance held in memory. Samples are stored channel-major as
// an M x T matrix of doubles normalized to [-1, 1]; row 0 is the reference
// microphone (channel 1 of the array).
struct UtteranceAudio {
  int sample_rate = 0;
  Eigen::MatrixXd samples;  // channels x samples

  int num_channels() const { return static_cast<int>(samples.rows()); }
  std::int64_t num_samples() const { return samples.cols(); }
};

struct FileNotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedWavError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedCodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SampleFormat { kPcm16, kFloat32 };

// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float samples.
// 16-bit samples are scaled by 1/32768. Throws FileNotFoundError,
// MalformedWavError or UnsupportedCodecError.
UtteranceAudio ReadWav(const std::string& path);

// Writes audio as 16-bit PCM (values clamped to [-1, 1] before quantization)
// or 32-bit IEEE float. Throws std::runtime_error on I/O failure.
void WriteWav(const UtteranceAudio& audio, const std::string& path,
              SampleFormat format);

// Stacks mono recordings into one multichannel utterance; input order defines
// channel order. Lengths are truncated to the shortest input, with a warning
// on stderr if they differ by more than 16 samples.
UtteranceAudio MergeChannels(const std::vector<UtteranceAudio>& mono_inputs);

}  // namespace mcse

#endif  // MCSE_AUDIO_IO_H_
