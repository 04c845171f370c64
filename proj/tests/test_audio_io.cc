// tests/test_audio_io.cc

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

#include <fstream>

#include "mcse/audio_io.h"
#include "test_util.h"

using namespace mcse;
using test::TempDir;

TEST_CASE("zero pcm16 file reads back as zeros") {
  TempDir dir("audio_zero");
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples = Eigen::MatrixXd::Zero(1, 1600);
  WriteWav(audio, dir.file("zero.wav"), SampleFormat::kPcm16);

  UtteranceAudio back = ReadWav(dir.file("zero.wav"));
  CHECK(back.num_channels() == 1);
  CHECK(back.num_samples() == 1600);
  CHECK(back.sample_rate == 16000);
  CHECK(back.samples.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pcm16 scaling maps -32768 to exactly -1") {
  TempDir dir("audio_scale");
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples.resize(1, 2);
  audio.samples(0, 0) = -1.0;  // quantizes to -32768
  audio.samples(0, 1) = 1.0;   // clamps to 32767
  WriteWav(audio, dir.file("edge.wav"), SampleFormat::kPcm16);

  UtteranceAudio back = ReadWav(dir.file("edge.wav"));
  CHECK(back.samples(0, 0) == -1.0);
  CHECK(back.samples(0, 1) == 32767.0 / 32768.0);
}

TEST_CASE("pcm16 round trip stays within one quantization step") {
  TempDir dir("audio_rt16");
  auto rng = test::MakeRng(101);
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples.resize(3, 4000);
  for (int m = 0; m < 3; ++m)
    for (int t = 0; t < 4000; ++t)
      audio.samples(m, t) = test::UniformDouble(rng, -1.0, 1.0);
  WriteWav(audio, dir.file("rt.wav"), SampleFormat::kPcm16);

  UtteranceAudio back = ReadWav(dir.file("rt.wav"));
  REQUIRE(back.samples.rows() == audio.samples.rows());
  REQUIRE(back.samples.cols() == audio.samples.cols());
  const double max_err = (back.samples - audio.samples).cwiseAbs().maxCoeff();
  CHECK(max_err <= std::pow(2.0, -15.0));
}

TEST_CASE("float32 round trip is bit exact for float-representable data") {
  TempDir dir("audio_rt32");
  auto rng = test::MakeRng(202);
  UtteranceAudio audio = test::RandomAudio(rng, 2, 3000, 16000, 0.8);
  // store what a float can hold so the comparison is exact
  audio.samples = audio.samples.cast<float>().cast<double>();
  WriteWav(audio, dir.file("rt.wav"), SampleFormat::kFloat32);

  UtteranceAudio back = ReadWav(dir.file("rt.wav"));
  CHECK((back.samples - audio.samples).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pcm16 write clamps out-of-range samples") {
  TempDir dir("audio_clamp");
  UtteranceAudio audio;
  audio.sample_rate = 16000;
  audio.samples.resize(1, 2);
  audio.samples(0, 0) = 1.5;
  audio.samples(0, 1) = -2.0;
  WriteWav(audio, dir.file("clamp.wav"), SampleFormat::kPcm16);

  UtteranceAudio back = ReadWav(dir.file("clamp.wav"));
  CHECK(back.samples(0, 0) == doctest::Approx(32767.0 / 32768.0).epsilon(0));
  CHECK(back.samples(0, 1) == -1.0);
}

TEST_CASE("read errors are reported distinctly") {
  TempDir dir("audio_err");
  CHECK_THROWS_AS(ReadWav(dir.file("missing.wav")), FileNotFoundError);

  {
    std::ofstream bad(dir.file("bad.wav"), std::ios::binary);
    bad << "RIFXjunkjunkjunkjunkjunk";
  }
  CHECK_THROWS_AS(ReadWav(dir.file("bad.wav")), MalformedWavError);

  // valid container, 8-bit PCM codec
  {
    std::ofstream f(dir.file("codec.wav"), std::ios::binary);
    auto u16 = [&](std::uint16_t v) { f.put(char(v & 0xFF)); f.put(char(v >> 8)); };
    auto u32 = [&](std::uint32_t v) {
      for (int i = 0; i < 4; ++i) f.put(char((v >> (8 * i)) & 0xFF));
    };
    f << "RIFF"; u32(36); f << "WAVE";
    f << "fmt "; u32(16); u16(1); u16(1); u32(16000); u32(16000); u16(1); u16(8);
    f << "data"; u32(0);
  }
  CHECK_THROWS_AS(ReadWav(dir.file("codec.wav")), UnsupportedCodecError);
}

TEST_CASE("merge of one mono file is the identity") {
  auto rng = test::MakeRng(7);
  UtteranceAudio mono = test::RandomAudio(rng, 1, 500);
  UtteranceAudio merged = MergeChannels({mono});
  CHECK(merged.num_channels() == 1);
  CHECK((merged.samples - mono.samples).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("merge preserves shape and channel order") {
  auto rng = test::MakeRng(8);
  std::vector<UtteranceAudio> inputs;
  for (int m = 0; m < 6; ++m) inputs.push_back(test::RandomAudio(rng, 1, 1000));
  UtteranceAudio merged = MergeChannels(inputs);
  CHECK(merged.num_channels() == 6);
  CHECK(merged.num_samples() == 1000);
  for (int m = 0; m < 6; ++m)
    CHECK((merged.samples.row(m) - inputs[m].samples.row(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("merge truncates to the shortest input") {
  auto rng = test::MakeRng(9);
  UtteranceAudio a = test::RandomAudio(rng, 1, 16000);
  UtteranceAudio b = test::RandomAudio(rng, 1, 15999);
  UtteranceAudio merged = MergeChannels({a, b});
  CHECK(merged.num_samples() == 15999);
  CHECK((merged.samples.row(0) - a.samples.row(0).head(15999)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("merge rejects bad input lists") {
  auto rng = test::MakeRng(10);
  CHECK_THROWS_AS(MergeChannels({}), std::invalid_argument);

  UtteranceAudio a = test::RandomAudio(rng, 1, 100, 16000);
  UtteranceAudio b = test::RandomAudio(rng, 1, 100, 8000);
  CHECK_THROWS_AS(MergeChannels({a, b}), std::invalid_argument);

  UtteranceAudio stereo = test::RandomAudio(rng, 2, 100);
  CHECK_THROWS_AS(MergeChannels({stereo}), std::invalid_argument);
}

TEST_CASE("multichannel wav round trip preserves shape and interleaving") {
  TempDir dir("audio_multi");
  auto rng = test::MakeRng(11);
  UtteranceAudio audio = test::RandomAudio(rng, 6, 777);
  audio.samples = audio.samples.cast<float>().cast<double>();
  WriteWav(audio, dir.file("m.wav"), SampleFormat::kFloat32);
  UtteranceAudio back = ReadWav(dir.file("m.wav"));
  CHECK(back.num_channels() == 6);
  CHECK(back.num_samples() == 777);
  CHECK((back.samples - audio.samples).cwiseAbs().maxCoeff() == 0.0);
}
