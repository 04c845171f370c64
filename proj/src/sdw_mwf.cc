// src/sdw_mwf.cc

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

#include "mcse/sdw_mwf.h"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace mcse {

namespace {
constexpr double kDiagonalLoading = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TradeoffParams ComputeTradeoff(const SpatialStats& stats,
                               double desired_noise_level, SnrMode mode) {
  if (!(desired_noise_level > 0.0))
    throw std::invalid_argument("sdw_mwf: desired residual noise level must be > 0");

  const int bins = stats.num_bins();
  TradeoffParams params;
  params.desired_noise_level = desired_noise_level;
  params.reduction_factor.resize(bins);
  params.input_snr.resize(bins);
  params.tradeoff.resize(bins);

  double broadband_snr = kInf;
  if (mode == SnrMode::kBroadband) {
    double target_sum = 0.0, noise_sum = 0.0;
    for (int k = 0; k < bins; ++k) {
      target_sum += std::max(stats.ref_observed_power[k] - stats.ref_noise_power[k], 0.0);
      noise_sum += stats.ref_noise_power[k];
    }
    if (noise_sum > 0.0) broadband_snr = target_sum / noise_sum;
  }

  for (int k = 0; k < bins; ++k) {
    const double noise_power = stats.ref_noise_power[k];
    const double target_power =
        std::max(stats.ref_observed_power[k] - noise_power, 0.0);
    double snr;
    if (mode == SnrMode::kBroadband) {
      snr = broadband_snr;
    } else {
      snr = noise_power > 0.0 ? target_power / noise_power : kInf;
    }
    const double s = noise_power / desired_noise_level;
    // s / inf == 0 (noise-free bin) and s / 0 == +inf, capped at mu = s.
    const double mu = std::isinf(snr) ? 0.0 : std::min(s, s / snr);
    params.reduction_factor[k] = s;
    params.input_snr[k] = snr;
    params.tradeoff[k] = mu;
  }
  return params;
}

Eigen::VectorXcd SolveFilter(const Eigen::MatrixXcd& target_psd,
                             const Eigen::MatrixXcd& noise_psd, double tradeoff,
                             int ref_channel) {
  const int channels = static_cast<int>(target_psd.rows());
  if (noise_psd.rows() != channels || target_psd.cols() != channels ||
      noise_psd.cols() != channels)
    throw std::invalid_argument("sdw_mwf: covariance shape mismatch");
  if (ref_channel < 0 || ref_channel >= channels)
    throw std::invalid_argument("sdw_mwf: reference channel out of range");
  if (!(tradeoff >= 0.0))
    throw std::invalid_argument("sdw_mwf: tradeoff must be >= 0");

  Eigen::MatrixXcd system = target_psd + tradeoff * noise_psd;
  const double trace = system.real().trace();
  if (!(trace > 0.0) || !system.allFinite())
    throw SingularSystemError("sdw_mwf: degenerate per-bin system");
  system.diagonal().array() += kDiagonalLoading * trace / channels;

  const Eigen::VectorXcd rhs = target_psd.col(ref_channel);
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(system);
  if (ldlt.info() != Eigen::Success)
    throw SingularSystemError("sdw_mwf: Hermitian factorization failed");
  Eigen::VectorXcd weights = ldlt.solve(rhs);
  if (!weights.allFinite())
    throw SingularSystemError("sdw_mwf: non-finite filter solution");

  const double residual = (system * weights - rhs).norm();
  const double scale = system.norm() * weights.norm() + rhs.norm();
  if (residual > 1e-8 * scale)
    throw SingularSystemError("sdw_mwf: per-bin solve residual too large");
  return weights;
}

MultichannelSpectrum ApplyFilter(const FilterBank& filters,
                                 const MultichannelSpectrum& spectrum) {
  const int channels = spectrum.channels();
  const int bins = spectrum.bins();
  const int frames = spectrum.frames();
  if (filters.num_bins() != bins)
    throw std::invalid_argument("sdw_mwf: filter bank bin count mismatch");
  for (const auto& w : filters.weights) {
    if (w.size() != channels)
      throw std::invalid_argument("sdw_mwf: filter length does not match channels");
  }

  MultichannelSpectrum out(1, frames, bins, spectrum.sample_rate());
  for (int l = 0; l < frames; ++l) {
    for (int k = 0; k < bins; ++k) {
      std::complex<double> acc(0.0, 0.0);
      const Eigen::VectorXcd& w = filters.weights[k];
      for (int m = 0; m < channels; ++m)
        acc += std::conj(w(m)) * spectrum.at(m, l, k);
      out.at(0, l, k) = acc;
    }
  }
  return out;
}

}  // namespace mcse
