// src/spatial_stats.cc

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

#include "mcse/spatial_stats.h"

#include <stdexcept>

#include <Eigen/Dense>

namespace mcse {

namespace {

// Mean of y y^H over the given frames, one matrix per bin.
std::vector<Eigen::MatrixXcd> AveragePsd(const MultichannelSpectrum& spectrum,
                                         const std::vector<int>& frames) {
  const int channels = spectrum.channels();
  const int bins = spectrum.bins();
  std::vector<Eigen::MatrixXcd> psd(bins, Eigen::MatrixXcd::Zero(channels, channels));
  Eigen::VectorXcd y(channels);
  for (int k = 0; k < bins; ++k) {
    for (int l : frames) {
      for (int m = 0; m < channels; ++m) y(m) = spectrum.at(m, l, k);
      psd[k].noalias() += y * y.adjoint();
    }
    psd[k] /= static_cast<double>(frames.size());
  }
  return psd;
}

std::vector<int> AllFrames(int count) {
  std::vector<int> frames(count);
  for (int l = 0; l < count; ++l) frames[l] = l;
  return frames;
}

std::vector<int> EdgeFrames(int count, int n_edge) {
  std::vector<int> frames;
  frames.reserve(2 * n_edge);
  for (int l = 0; l < n_edge; ++l) frames.push_back(l);
  for (int l = count - n_edge; l < count; ++l) frames.push_back(l);
  return frames;
}

// Clamps negative eigenvalues of a Hermitian matrix to zero.
Eigen::MatrixXcd ProjectPsd(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian);
  Eigen::VectorXd values = eig.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd projected =
      eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().adjoint();
  return 0.5 * (projected + projected.adjoint());
}

void CheckEdgeFrames(const MultichannelSpectrum& spectrum, int n_edge_frames) {
  if (n_edge_frames < 1)
    throw std::invalid_argument("spatial_stats: n_edge_frames must be >= 1");
  if (spectrum.frames() < 2 * n_edge_frames)
    throw std::invalid_argument(
        "spatial_stats: utterance too short for the requested edge frames");
}

}  // namespace

NoiseStats EstimateNoiseStats(const MultichannelSpectrum& spectrum,
                              int n_edge_frames) {
  CheckEdgeFrames(spectrum, n_edge_frames);
  NoiseStats stats;
  stats.psd = AveragePsd(spectrum, EdgeFrames(spectrum.frames(), n_edge_frames));
  stats.ref_power.resize(stats.psd.size());
  for (std::size_t k = 0; k < stats.psd.size(); ++k)
    stats.ref_power[k] = stats.psd[k](0, 0).real();
  return stats;
}

std::vector<Eigen::MatrixXcd> EstimateSignalStats(
    const MultichannelSpectrum& spectrum,
    const std::vector<Eigen::MatrixXcd>& noise_psd) {
  if (static_cast<int>(noise_psd.size()) != spectrum.bins())
    throw std::invalid_argument("spatial_stats: noise psd bin count mismatch");
  std::vector<Eigen::MatrixXcd> observed =
      AveragePsd(spectrum, AllFrames(spectrum.frames()));
  std::vector<Eigen::MatrixXcd> target(observed.size());
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (noise_psd[k].rows() != observed[k].rows())
      throw std::invalid_argument("spatial_stats: noise psd channel count mismatch");
    Eigen::MatrixXcd diff = observed[k] - noise_psd[k];
    target[k] = ProjectPsd(0.5 * (diff + diff.adjoint()));
  }
  return target;
}

SpatialStats EstimateSpatialStats(const MultichannelSpectrum& spectrum,
                                  int n_edge_frames) {
  CheckEdgeFrames(spectrum, n_edge_frames);
  SpatialStats stats;
  stats.channels = spectrum.channels();
  stats.noise_psd = AveragePsd(spectrum, EdgeFrames(spectrum.frames(), n_edge_frames));
  std::vector<Eigen::MatrixXcd> observed =
      AveragePsd(spectrum, AllFrames(spectrum.frames()));

  const int bins = spectrum.bins();
  stats.target_psd.resize(bins);
  stats.ref_noise_power.resize(bins);
  stats.ref_observed_power.resize(bins);
  for (int k = 0; k < bins; ++k) {
    Eigen::MatrixXcd diff = observed[k] - stats.noise_psd[k];
    stats.target_psd[k] = ProjectPsd(0.5 * (diff + diff.adjoint()));
    stats.ref_noise_power[k] = stats.noise_psd[k](0, 0).real();
    stats.ref_observed_power[k] = observed[k](0, 0).real();
  }
  return stats;
}

}  // namespace mcse
