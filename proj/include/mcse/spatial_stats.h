// include/mcse/spatial_stats.h

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

#ifndef MCSE_SPATIAL_STATS_H_
#define MCSE_SPATIAL_STATS_H_

#include <vector>

#include <Eigen/Core>

#include "mcse/stft.h"

namespace mcse {

// Edge-frame noise estimate: per-bin Hermitian M x M covariance plus the
// noise power at the reference microphone (the real part of entry (0, 0)).
struct NoiseStats {
  std::vector<Eigen::MatrixXcd> psd;  // per bin
  std::vector<double> ref_power;      // per bin
};

// Per-bin second-order statistics of one utterance.
struct SpatialStats {
  int channels = 0;
  std::vector<Eigen::MatrixXcd> noise_psd;   // per bin, M x M
  std::vector<Eigen::MatrixXcd> target_psd;  // per bin, M x M, PSD-projected
  std::vector<double> ref_noise_power;       // noise power at the reference mic
  std::vector<double> ref_observed_power;    // observed power at the reference mic

  int num_bins() const { return static_cast<int>(noise_psd.size()); }
};

// Averages the outer products y y^H over the first and last n_edge_frames
// frames of the utterance (2 * n_edge_frames terms per bin). Throws
// std::invalid_argument when the utterance has fewer than 2 * n_edge_frames
// frames or n_edge_frames < 1.
NoiseStats EstimateNoiseStats(const MultichannelSpectrum& spectrum,
                              int n_edge_frames);

// Observed covariance averaged over all frames, minus the noise covariance,
// projected back to the positive semidefinite cone (negative eigenvalues of
// the Hermitian difference are clamped to zero).
std::vector<Eigen::MatrixXcd> EstimateSignalStats(
    const MultichannelSpectrum& spectrum,
    const std::vector<Eigen::MatrixXcd>& noise_psd);

// Noise and target statistics of one utterance in a single pass.
SpatialStats EstimateSpatialStats(const MultichannelSpectrum& spectrum,
                                  int n_edge_frames);

}  // namespace mcse

#endif  // MCSE_SPATIAL_STATS_H_
