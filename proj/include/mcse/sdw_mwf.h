// include/mcse/sdw_mwf.h

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

#ifndef MCSE_SDW_MWF_H_
#define MCSE_SDW_MWF_H_

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "mcse/spatial_stats.h"
#include "mcse/stft.h"

namespace mcse {

// How the input SNR entering the tradeoff rule is measured: independently in
// every frequency bin, or once from the band-summed powers.
enum class SnrMode { kPerBin, kBroadband };

// Per-bin tradeoff state. The filter weighs residual noise against target
// distortion with a scalar mu per bin; mu is derived from the desired
// residual noise level phi_0 via the noise reduction control factor
// s = ref_noise_power / phi_0 and the input SNR at the reference mic:
//
//   mu = min(s, s / snr)
//
// so low-SNR or high-noise bins are driven toward maximum reduction (mu = s)
// and clean bins toward passthrough (mu -> 0).
struct TradeoffParams {
  double desired_noise_level = 0.0;      // phi_0
  std::vector<double> reduction_factor;  // s, per bin
  std::vector<double> input_snr;         // per bin; +inf for noise-free bins
  std::vector<double> tradeoff;          // mu, per bin

  int num_bins() const { return static_cast<int>(tradeoff.size()); }
};

// Per-bin complex filter applied as w^H y. ref_channel selects the
// microphone whose target component the filter estimates.
struct FilterBank {
  int ref_channel = 0;                    // zero-based
  std::vector<Eigen::VectorXcd> weights;  // per bin, length M

  int num_bins() const { return static_cast<int>(weights.size()); }
};

// The per-bin linear system could not be solved reliably.
struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Derives s, snr and mu for every bin. The target power at the reference mic
// is estimated as max(ref_observed_power - ref_noise_power, 0). Conventions:
// snr = +inf when the bin is noise-free (then mu = 0), and s / 0 caps at
// mu = s. Throws std::invalid_argument for desired_noise_level <= 0.
TradeoffParams ComputeTradeoff(const SpatialStats& stats,
                               double desired_noise_level,
                               SnrMode mode = SnrMode::kPerBin);

// Solves (target_psd + mu * noise_psd) w = target_psd * u_ref with a
// Hermitian factorization after adding a diagonal loading of
// 1e-10 * trace / M to the system matrix; no explicit inverse is formed.
// Throws SingularSystemError when the loaded system is still unreliable
// (zero trace, non-finite solution, or large residual).
Eigen::VectorXcd SolveFilter(const Eigen::MatrixXcd& target_psd,
                             const Eigen::MatrixXcd& noise_psd, double tradeoff,
                             int ref_channel);

// out(k, l) = w(k)^H y(k, l); returns a single-channel spectrum.
MultichannelSpectrum ApplyFilter(const FilterBank& filters,
                                 const MultichannelSpectrum& spectrum);

}  // namespace mcse

#endif  // MCSE_SDW_MWF_H_
