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

#include "beamacq/estimators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "beamacq/grid_transform.hpp"

namespace beamacq {

namespace {

void check_observations(const Eigen::MatrixXcd& y) {
  if (y.size() == 0) throw std::invalid_argument("estimator: empty observation matrix");
  if (!y.allFinite()) throw std::invalid_argument("estimator: observations must be finite");
}

void check_codebook(const Codebook& cb, const ArrayGeometry& geom, const char* side) {
  if (cb.size() < 1) throw std::invalid_argument(std::string("estimator: empty codebook on ") + side);
  if (cb.weights.rows() != geom.total_elements())
    throw std::invalid_argument(std::string("estimator: codebook/geometry mismatch on ") + side);
}

// Total response energy the sweep deposits on each grid point,
// D[g] = sum_b |w_b^H u(g)|^2. For uniform DFT sweeps this is constant,
// so one direct evaluation at grid point zero (where the response is the
// all-ones vector) stands in for the whole grid.
struct ResponseEnergy {
  bool flat = false;
  double constant = 0.0;
  Eigen::VectorXd grid;  // when not flat

  double operator()(int i) const { return flat ? constant : grid[i]; }
};

ResponseEnergy response_energy(const ResponseGridTransform& t, const Codebook& cb) {
  ResponseEnergy e;
  if (cb.uniform_response_energy) {
    e.flat = true;
    const double total = static_cast<double>(t.geometry().total_elements());
    double acc = 0.0;
    for (int b = 0; b < cb.size(); ++b) acc += std::norm(cb.weights.col(b).sum()) / total;
    e.constant = acc;
    return e;
  }
  e.grid = Eigen::VectorXd::Zero(t.grid_points());
  for (int b = 0; b < cb.size(); ++b)
    e.grid += t.transform(cb.weights.col(b)).cwiseAbs2();
  // An undersampled sweep has exact nulls on the grid that survive only as
  // round-off dust; flush them so unswept points read as zero energy
  // instead of dividing the statistic by noise.
  const double floor = e.grid.mean() * 1e-9;
  for (Eigen::Index i = 0; i < e.grid.size(); ++i)
    if (e.grid[i] <= floor) e.grid[i] = 0.0;
  return e;
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// Peak tracker whose ties resolve to the earliest submission, which scans
// are ordered to make the smallest flat grid index.
struct Peak {
  double value = -std::numeric_limits<double>::infinity();
  int ap = -1;
  int aoa_flat = 0;
  int aod_flat = 0;
  std::complex<double> numerator{0.0, 0.0};
  double denominator = 1.0;

  void offer(double v, int ap_i, int i, int j, std::complex<double> num, double den) {
    if (v > value) {
      value = v;
      ap = ap_i;
      aoa_flat = i;
      aod_flat = j;
      numerator = num;
      denominator = den;
    }
  }
};

}  // namespace

EstimatorKind estimator_from_name(const std::string& name) {
  if (name == "mp") return EstimatorKind::mp;
  if (name == "ml") return EstimatorKind::ml;
  if (name == "lml") return EstimatorKind::lml;
  throw std::invalid_argument("unknown estimator: " + name);
}

std::string estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::mp: return "mp";
    case EstimatorKind::ml: return "ml";
    case EstimatorKind::lml: return "lml";
  }
  throw std::logic_error("unreachable estimator kind");
}

double StatisticGrid::at(std::span<const int> idx) const {
  if (idx.size() != dims.size()) throw std::invalid_argument("statistic grid: index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= dims[a])
      throw std::invalid_argument("statistic grid: index out of range");
    flat = flat * static_cast<std::size_t>(dims[a]) + static_cast<std::size_t>(idx[a]);
  }
  return values[flat];
}

MpEstimate estimate_mp(const Eigen::MatrixXcd& y) {
  check_observations(y);
  MpEstimate best;
  double top = -1.0;
  for (int p = 0; p < y.rows(); ++p) {
    for (int q = 0; q < y.cols(); ++q) {
      const double power = std::norm(y(p, q));
      if (power > top) {
        top = power;
        best = MpEstimate{p, q, power};
      }
    }
  }
  return best;
}

StatisticGrid ml_statistic(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                           const ArrayGeometry& mobile_geom, const Codebook& ap_codebook,
                           const ArrayGeometry& ap_geom, int fft_size) {
  check_observations(y);
  check_codebook(mobile_codebook, mobile_geom, "receive side");
  check_codebook(ap_codebook, ap_geom, "transmit side");
  if (y.rows() != mobile_codebook.size() || y.cols() != ap_codebook.size())
    throw std::invalid_argument("ml_statistic: observation shape does not match the codebooks");

  const ResponseGridTransform rxT(mobile_geom, fft_size);
  const ResponseGridTransform txT(ap_geom, fft_size);
  const int n_rx = rxT.grid_points();
  const int n_tx = txT.grid_points();
  const std::size_t cells = static_cast<std::size_t>(n_rx) * static_cast<std::size_t>(n_tx);
  if (cells > (std::size_t{1} << 24))
    throw std::invalid_argument("ml_statistic: grid too large to materialize; reduce fft size");

  // Tr(Z^H Y) as a bilinear form: u^H (W Y F^H) a evaluated on the grid by
  // transforming the accumulated matrix once per side.
  const Eigen::MatrixXcd acc =
      mobile_codebook.weights * y * ap_codebook.weights.adjoint();
  Eigen::MatrixXcd left(n_rx, acc.cols());
  for (Eigen::Index n = 0; n < acc.cols(); ++n) left.col(n) = rxT.transform(acc.col(n));

  const ResponseEnergy dw = response_energy(rxT, mobile_codebook);
  const ResponseEnergy df = response_energy(txT, ap_codebook);

  StatisticGrid grid;
  grid.fft_size = fft_size;
  grid.dims = rxT.axis_sizes();
  for (int d : txT.axis_sizes()) grid.dims.push_back(d);
  grid.values.resize(cells);
  for (int i = 0; i < n_rx; ++i) {
    const Eigen::VectorXcd numerators = txT.transform_right(left.row(i).transpose());
    for (int j = 0; j < n_tx; ++j)
      grid.values[static_cast<std::size_t>(i) * n_tx + j] =
          safe_ratio(std::norm(numerators[j]), dw(i) * df(j));
  }
  return grid;
}

StatisticGrid lml_statistic(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                            const ArrayGeometry& mobile_geom, int fft_size) {
  check_observations(y);
  check_codebook(mobile_codebook, mobile_geom, "receive side");
  if (y.rows() != mobile_codebook.size())
    throw std::invalid_argument("lml_statistic: observation rows do not match the codebook");

  const ResponseGridTransform rxT(mobile_geom, fft_size);
  const Eigen::MatrixXcd lambda = mobile_codebook.weights * y;  // antennas x Q

  Eigen::VectorXd energy = Eigen::VectorXd::Zero(rxT.grid_points());
  for (Eigen::Index q = 0; q < lambda.cols(); ++q)
    energy += rxT.transform(lambda.col(q)).cwiseAbs2();

  const ResponseEnergy dw = response_energy(rxT, mobile_codebook);
  StatisticGrid grid;
  grid.fft_size = fft_size;
  grid.dims = rxT.axis_sizes();
  grid.values.resize(static_cast<std::size_t>(rxT.grid_points()));
  for (int i = 0; i < rxT.grid_points(); ++i) grid.values[i] = safe_ratio(energy[i], dw(i));
  return grid;
}

AngleEstimate estimate_ml(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                          const ArrayGeometry& mobile_geom,
                          std::span<const Codebook> ap_codebooks, const ArrayGeometry& ap_geom,
                          int fft_size) {
  check_observations(y);
  check_codebook(mobile_codebook, mobile_geom, "receive side");
  if (ap_codebooks.empty()) throw std::invalid_argument("estimate_ml: no transmitter codebooks");
  if (y.rows() != mobile_codebook.size())
    throw std::invalid_argument("estimate_ml: observation rows do not match the codebook");

  const ResponseGridTransform rxT(mobile_geom, fft_size);
  const ResponseGridTransform txT(ap_geom, fft_size);
  const int n_rx = rxT.grid_points();
  const int n_tx = txT.grid_points();
  const ResponseEnergy dw = response_energy(rxT, mobile_codebook);
  const Eigen::MatrixXcd lambda = mobile_codebook.weights * y;

  Peak peak;
  for (std::size_t l = 0; l < ap_codebooks.size(); ++l) {
    const Codebook& f = ap_codebooks[l];
    check_codebook(f, ap_geom, "transmit side");
    if (y.cols() != f.size())
      throw std::invalid_argument("estimate_ml: observation columns do not match codebook");
    const Eigen::MatrixXcd acc = lambda * f.weights.adjoint();
    Eigen::MatrixXcd left(n_rx, acc.cols());
    for (Eigen::Index n = 0; n < acc.cols(); ++n) left.col(n) = rxT.transform(acc.col(n));
    const ResponseEnergy df = response_energy(txT, f);
    for (int i = 0; i < n_rx; ++i) {
      const Eigen::VectorXcd numerators = txT.transform_right(left.row(i).transpose());
      for (int j = 0; j < n_tx; ++j) {
        const double den = dw(i) * df(j);
        peak.offer(safe_ratio(std::norm(numerators[j]), den), static_cast<int>(l), i, j,
                   numerators[j], den);
      }
    }
  }

  AngleEstimate est;
  est.degenerate = (y.norm() == 0.0);
  est.aoa = rxT.phases(peak.aoa_flat);
  est.aod = txT.phases(peak.aod_flat);
  est.has_aod = true;
  est.ap_index = peak.ap;
  est.statistic = peak.value;
  est.path_gain = (peak.denominator > 0.0) ? peak.numerator / peak.denominator
                                           : std::complex<double>{0.0, 0.0};
  est.aoa_index = rxT.axis_indices(peak.aoa_flat);
  est.aod_index = txT.axis_indices(peak.aod_flat);
  return est;
}

AngleEstimate estimate_lml(const Eigen::MatrixXcd& y, const Codebook& mobile_codebook,
                           const ArrayGeometry& mobile_geom, int fft_size) {
  const StatisticGrid grid = lml_statistic(y, mobile_codebook, mobile_geom, fft_size);
  const ResponseGridTransform rxT(mobile_geom, fft_size);
  int best = 0;
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(grid.values.size()); ++i) {
    if (grid.values[i] > top) {
      top = grid.values[i];
      best = i;
    }
  }
  AngleEstimate est;
  est.degenerate = (y.norm() == 0.0);
  est.aoa = rxT.phases(best);
  est.has_aod = false;
  est.statistic = top;
  est.aoa_index = rxT.axis_indices(best);
  return est;
}

double statistic_normalizer(int repetitions, int num_rx_beams, int num_tx_beams,
                            int rx_antennas, int tx_antennas, double noise_std) {
  if (repetitions < 1 || num_rx_beams < 1 || num_tx_beams < 1 || rx_antennas < 1 ||
      tx_antennas < 1)
    throw std::invalid_argument("statistic_normalizer: counts must be >= 1");
  if (noise_std <= 0.0) throw std::invalid_argument("statistic_normalizer: noise std must be > 0");
  return std::sqrt(static_cast<double>(repetitions) * rx_antennas * tx_antennas /
                   (static_cast<double>(num_rx_beams) * num_tx_beams)) /
         noise_std;
}

std::complex<double> decision_statistic_mean(std::span<const double> path_snrs,
                                             std::span<const std::complex<double>> beam_gains,
                                             int pilot_count, int rx_antennas, int tx_antennas) {
  if (path_snrs.size() != beam_gains.size())
    throw std::invalid_argument("decision_statistic_mean: snr/gain length mismatch");
  if (pilot_count < 1 || rx_antennas < 1 || tx_antennas < 1)
    throw std::invalid_argument("decision_statistic_mean: counts must be >= 1");
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t s = 0; s < path_snrs.size(); ++s) {
    if (path_snrs[s] < 0.0)
      throw std::invalid_argument("decision_statistic_mean: SNRs must be >= 0");
    acc += std::sqrt(path_snrs[s]) * beam_gains[s];
  }
  return std::sqrt(static_cast<double>(pilot_count) /
                   (static_cast<double>(rx_antennas) * tx_antennas)) *
         acc;
}

double misalignment_probability(double gamma_max, double gamma_s, int pilot_count,
                                int ap_subarray_elements, int mobile_subarray_elements,
                                int num_subarrays) {
  if (gamma_max < 0.0 || gamma_s < 0.0)
    throw std::invalid_argument("misalignment_probability: SNRs must be >= 0");
  if (pilot_count < 1) throw std::invalid_argument("misalignment_probability: pilots must be >= 1");
  const double antennas = static_cast<double>(ap_subarray_elements) * mobile_subarray_elements *
                          num_subarrays * num_subarrays;
  const double sigma = std::sqrt(antennas / static_cast<double>(pilot_count));
  const double x = (std::sqrt(gamma_max) - std::sqrt(gamma_s)) / sigma;
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

}  // namespace beamacq
