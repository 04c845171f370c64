// src/audio_io.cc

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

#include "mcse/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace mcse {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::string* out, std::uint16_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
}

void PutU32(std::string* out, std::uint32_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
  out->push_back(static_cast<char>((v >> 16) & 0xFF));
  out->push_back(static_cast<char>((v >> 24) & 0xFF));
}

struct WavFormat {
  std::uint16_t codec = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

}  // namespace

UtteranceAudio ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError("cannot open wav file: " + path);

  unsigned char header[12];
  if (!in.read(reinterpret_cast<char*>(header), 12))
    throw MalformedWavError("truncated RIFF header: " + path);
  if (std::memcmp(header, "RIFF", 4) != 0 || std::memcmp(header + 8, "WAVE", 4) != 0)
    throw MalformedWavError("not a RIFF/WAVE file: " + path);

  WavFormat fmt;
  bool have_fmt = false;
  std::string payload;

  unsigned char chunk_header[8];
  while (in.read(reinterpret_cast<char*>(chunk_header), 8)) {
    std::uint32_t chunk_size = ReadU32(chunk_header + 4);
    if (std::memcmp(chunk_header, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw MalformedWavError("fmt chunk too small: " + path);
      std::vector<unsigned char> body(chunk_size);
      if (!in.read(reinterpret_cast<char*>(body.data()), chunk_size))
        throw MalformedWavError("truncated fmt chunk: " + path);
      fmt.codec = ReadU16(body.data());
      fmt.channels = ReadU16(body.data() + 2);
      fmt.sample_rate = ReadU32(body.data() + 4);
      fmt.block_align = ReadU16(body.data() + 12);
      fmt.bits = ReadU16(body.data() + 14);
      if (fmt.codec == kFormatExtensible) {
        // First two bytes of the SubFormat GUID carry the effective codec.
        if (chunk_size < 40) throw MalformedWavError("extensible fmt chunk too small: " + path);
        fmt.codec = ReadU16(body.data() + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk_header, "data", 4) == 0) {
      payload.resize(chunk_size);
      if (!in.read(payload.data(), chunk_size))
        throw MalformedWavError("truncated data chunk: " + path);
    } else {
      in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
      continue;
    }
    if (chunk_size & 1) in.seekg(1, std::ios::cur);
  }

  if (!have_fmt) throw MalformedWavError("missing fmt chunk: " + path);
  if (fmt.channels == 0 || fmt.sample_rate == 0)
    throw MalformedWavError("invalid fmt fields: " + path);

  int bytes_per_sample;
  if (fmt.codec == kFormatPcm && fmt.bits == 16) {
    bytes_per_sample = 2;
  } else if (fmt.codec == kFormatFloat && fmt.bits == 32) {
    bytes_per_sample = 4;
  } else {
    throw UnsupportedCodecError("unsupported wav codec " + std::to_string(fmt.codec) +
                                " with " + std::to_string(fmt.bits) + " bits: " + path);
  }
  const int frame_bytes = bytes_per_sample * fmt.channels;
  if (fmt.block_align != 0 && fmt.block_align != frame_bytes)
    throw MalformedWavError("block alignment inconsistent with format: " + path);
  if (payload.size() % frame_bytes != 0)
    throw MalformedWavError("data chunk not a whole number of frames: " + path);

  const std::int64_t num_frames = static_cast<std::int64_t>(payload.size()) / frame_bytes;
  UtteranceAudio audio;
  audio.sample_rate = static_cast<int>(fmt.sample_rate);
  audio.samples.resize(fmt.channels, num_frames);
  const auto* bytes = reinterpret_cast<const unsigned char*>(payload.data());
  for (std::int64_t t = 0; t < num_frames; ++t) {
    for (int m = 0; m < fmt.channels; ++m) {
      const unsigned char* p = bytes + (t * fmt.channels + m) * bytes_per_sample;
      if (bytes_per_sample == 2) {
        auto v = static_cast<std::int16_t>(ReadU16(p));
        audio.samples(m, t) = static_cast<double>(v) / 32768.0;
      } else {
        std::uint32_t u = ReadU32(p);
        float f;
        std::memcpy(&f, &u, 4);
        audio.samples(m, t) = static_cast<double>(f);
      }
    }
  }
  return audio;
}

void WriteWav(const UtteranceAudio& audio, const std::string& path,
              SampleFormat format) {
  const int channels = audio.num_channels();
  const std::int64_t num_frames = audio.num_samples();
  const int bytes_per_sample = format == SampleFormat::kPcm16 ? 2 : 4;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(num_frames * channels * bytes_per_sample);

  std::string out;
  out.reserve(64 + data_bytes);
  out.append("RIFF");
  const bool is_float = format == SampleFormat::kFloat32;
  // float wavs additionally carry a fact chunk with the frame count
  const std::uint32_t riff_size = 4 + (8 + 16) + (is_float ? 8 + 4 : 0) + 8 + data_bytes;
  PutU32(&out, riff_size);
  out.append("WAVE");
  out.append("fmt ");
  PutU32(&out, 16);
  PutU16(&out, is_float ? kFormatFloat : kFormatPcm);
  PutU16(&out, static_cast<std::uint16_t>(channels));
  PutU32(&out, static_cast<std::uint32_t>(audio.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(audio.sample_rate * channels * bytes_per_sample));
  PutU16(&out, static_cast<std::uint16_t>(channels * bytes_per_sample));
  PutU16(&out, static_cast<std::uint16_t>(bytes_per_sample * 8));
  if (is_float) {
    out.append("fact");
    PutU32(&out, 4);
    PutU32(&out, static_cast<std::uint32_t>(num_frames));
  }
  out.append("data");
  PutU32(&out, data_bytes);

  for (std::int64_t t = 0; t < num_frames; ++t) {
    for (int m = 0; m < channels; ++m) {
      double x = audio.samples(m, t);
      if (format == SampleFormat::kPcm16) {
        x = std::clamp(x, -1.0, 1.0);
        auto q = static_cast<long>(std::lrint(x * 32768.0));
        q = std::clamp(q, -32768L, 32767L);
        PutU16(&out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
      } else {
        auto f = static_cast<float>(x);
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        PutU32(&out, u);
      }
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw std::runtime_error("write failed: " + path);
}

UtteranceAudio MergeChannels(const std::vector<UtteranceAudio>& mono_inputs) {
  if (mono_inputs.empty())
    throw std::invalid_argument("merge_channels: empty input list");
  const int rate = mono_inputs.front().sample_rate;
  std::int64_t min_len = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_len = 0;
  for (const auto& a : mono_inputs) {
    if (a.num_channels() != 1)
      throw std::invalid_argument("merge_channels: inputs must be mono");
    if (a.sample_rate != rate)
      throw std::invalid_argument("merge_channels: mismatched sample rates");
    min_len = std::min(min_len, a.num_samples());
    max_len = std::max(max_len, a.num_samples());
  }
  if (max_len - min_len > 16) {
    std::fprintf(stderr,
                 "warning: merge_channels truncating %lld samples (lengths %lld..%lld)\n",
                 static_cast<long long>(max_len - min_len),
                 static_cast<long long>(min_len), static_cast<long long>(max_len));
  }

  UtteranceAudio merged;
  merged.sample_rate = rate;
  merged.samples.resize(static_cast<int>(mono_inputs.size()), min_len);
  for (std::size_t m = 0; m < mono_inputs.size(); ++m)
    merged.samples.row(static_cast<int>(m)) = mono_inputs[m].samples.row(0).head(min_len);
  return merged;
}

}  // namespace mcse
