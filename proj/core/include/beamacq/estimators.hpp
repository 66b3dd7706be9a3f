// SPDX-License-Identifier: Apache-2.0
//
// beamacq - beam acquisition simulator for dense millimeter-wave networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "beamacq/arrays.hpp"
#include "beamacq/codebooks.hpp"

namespace beamacq {

enum class EstimatorKind { mp, ml, lml };
EstimatorKind estimator_from_name(const std::string& name);  // "mp", "ml", "lml"
std::string estimator_name(EstimatorKind kind);

// Strongest observation entry; ties break to the smallest (combiner, beam)
// pair in lexicographic order.
struct MpEstimate {
  int combiner_index = 0;  // p: receive-beam row
  int beam_index = 0;      // q: transmit-beam column
  double power = 0.0;      // |y|^2 at the peak
};
MpEstimate estimate_mp(const Eigen::MatrixXcd& y);

// Statistic evaluated on the full search grid. Values flatten row-major
// over dims with the last axis fastest. Axes are the arrival grid axes
// followed by the departure grid axes (the departure block is absent for
// the arrival-only statistic).
struct StatisticGrid {
  std::vector<int> dims;
  std::vector<double> values;
  int fft_size = 0;

  double at(std::span<const int> idx) const;
};

// Direction estimate on the search grid. Phases are electrical; map them
// with angle_from_phases when a physical direction is needed.
struct AngleEstimate {
  PhasePair aoa;
  PhasePair aod;                       // valid when has_aod
  bool has_aod = false;
  int ap_index = -1;                   // transmitter hypothesis, when several
  std::complex<double> path_gain{0.0, 0.0};  // fitted complex gain (joint fit only)
  double statistic = 0.0;              // grid peak value
  bool degenerate = false;             // all-zero observations; indices pinned to 0
  std::vector<int> aoa_index;          // grid index per arrival axis
  std::vector<int> aod_index;          // grid index per departure axis
};

// Joint arrival/departure likelihood landscape for one transmitter:
// |Tr(Z^H Y)|^2 / ||Z||_F^2 over the arrival x departure phase grid,
// computed with zero-padded FFTs. Matches direct evaluation to floating-
// point accuracy on every grid point.
StatisticGrid ml_statistic(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                           const ArrayGeometry& mobile_geom, const Codebook& ap_codebook,
                           const ArrayGeometry& ap_geom, int fft_size);

// Arrival-only landscape: sum_q |u^H lambda_q|^2 / ||b||^2 with
// lambda_q = sum_p w_p y_pq.
StatisticGrid lml_statistic(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                            const ArrayGeometry& mobile_geom, int fft_size);

// Peak of ml_statistic across the given transmitter codebooks. Ties break
// toward the smallest transmitter index, then the smallest flat grid
// index. Never materializes the joint grid.
AngleEstimate estimate_ml(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                          const ArrayGeometry& mobile_geom,
                          std::span<const Codebook> ap_codebooks, const ArrayGeometry& ap_geom,
                          int fft_size);

// Peak of lml_statistic; arrival only.
AngleEstimate estimate_lml(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                           const ArrayGeometry& mobile_geom, int fft_size);

// Multiplier taking Tr(Z^H Y) to the unit-noise-variance decision
// statistic under uniform DFT sweeping: sqrt(I * A_rx * A_tx / (P * Q)) /
// noise_std, where A_rx/A_tx are the hypothesized response lengths.
double statistic_normalizer(int repetitions, int num_rx_beams, int num_tx_beams,
                            int rx_antennas, int tx_antennas, double noise_std);

// Mean of the normalized statistic at hypothesis psi:
// sqrt(pilot_count / (A_rx * A_tx)) * sum_s sqrt(gamma_s) * gain_s, with
// gain_s the response correlation between psi and path s. Its variance is
// 1 by construction of the normalizer.
std::complex<double> decision_statistic_mean(std::span<const double> path_snrs,
                                             std::span<const std::complex<double>> beam_gains,
                                             int pilot_count, int rx_antennas, int tx_antennas);

// Gaussian tail approximation of the probability of aligning to path s
// instead of the strongest path: Q((sqrt(g_max) - sqrt(g_s)) /
// sqrt(N*M*J^2 / pilot_count)).
double misalignment_probability(double gamma_max, double gamma_s, int pilot_count,
                                int ap_subarray_elements, int mobile_subarray_elements,
                                int num_subarrays);

}  // namespace beamacq
