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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "beamacq/estimators.hpp"
#include "beamacq/grid_transform.hpp"
#include "support/oracles.hpp"

using namespace beamacq;

namespace {

constexpr double kCarrier = 28e9;

Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd y(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) y(r, c) = rng.cnormal(1.0);
  return y;
}

}  // namespace

TEST_CASE("estimator names round-trip") {
  for (EstimatorKind kind : {EstimatorKind::mp, EstimatorKind::ml, EstimatorKind::lml}) {
    CHECK(estimator_from_name(estimator_name(kind)) == kind);
  }
  CHECK_THROWS_AS(estimator_from_name("nonesuch"), std::invalid_argument);
}

TEST_CASE("estimate_mp finds the strongest entry") {
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(3, 4);
  y(1, 2) = {2.0, 1.0};
  y(2, 0) = {1.0, 0.0};
  const MpEstimate est = estimate_mp(y);
  CHECK(est.combiner_index == 1);
  CHECK(est.beam_index == 2);
  CHECK(est.power == doctest::Approx(5.0));
}

TEST_CASE("estimate_mp breaks ties toward the smallest pair") {
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(3, 3);
  y(0, 1) = {1.0, 0.0};
  y(1, 0) = {0.0, 1.0};
  y(2, 2) = {-1.0, 0.0};
  const MpEstimate est = estimate_mp(y);
  CHECK(est.combiner_index == 0);
  CHECK(est.beam_index == 1);
}

TEST_CASE("ml_statistic matches direct evaluation across codebook kinds") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  Rng rng(20);

  struct Case {
    CodebookKind mobile_kind;
    CodebookKind ap_kind;
    int p;
    int q;
    int fft;
  };
  const Case cases[] = {
      {CodebookKind::full_sweep, CodebookKind::full_sweep, 8, 16, 16},
      {CodebookKind::adaptive, CodebookKind::adaptive, 6, 10, 20},
      {CodebookKind::single_rf, CodebookKind::single_rf, 4, 8, 16},
      {CodebookKind::cross, CodebookKind::cross, 8, 8, 16},
      {CodebookKind::random_phase, CodebookKind::random_phase, 5, 7, 16},
  };

  for (const Case& c : cases) {
    const Codebook wcb = build_codebook(c.mobile_kind, mobile, c.p, &rng);
    const Codebook fcb = build_codebook(c.ap_kind, ap, c.q, &rng);
    const Eigen::MatrixXcd y = random_matrix(c.p, c.q, rng);

    const StatisticGrid grid = ml_statistic(y, wcb, mobile, fcb, ap, c.fft);
    const std::vector<double> direct =
        testing::direct_ml_statistic(y, wcb, mobile, fcb, ap, c.fft);

    REQUIRE(grid.values.size() == direct.size());
    REQUIRE(grid.dims == std::vector<int>{c.fft, c.fft});
    CHECK(testing::max_relative_error(direct, grid.values) < 1e-9);
  }
}

TEST_CASE("ml_statistic matches direct evaluation on planar arrays") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::upa(4, 4, kCarrier);
  Rng rng(21);
  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const Eigen::MatrixXcd y = random_matrix(8, 16, rng);

  const StatisticGrid grid = ml_statistic(y, wcb, mobile, fcb, ap, 16);
  const std::vector<double> direct = testing::direct_ml_statistic(y, wcb, mobile, fcb, ap, 16);
  REQUIRE(grid.dims == std::vector<int>{16, 16, 16});
  CHECK(testing::max_relative_error(direct, grid.values) < 1e-9);
}

TEST_CASE("lml_statistic matches direct evaluation") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  Rng rng(22);
  for (CodebookKind kind :
       {CodebookKind::full_sweep, CodebookKind::cross, CodebookKind::random_phase}) {
    const Codebook wcb = build_codebook(kind, mobile, 8, &rng);
    const Eigen::MatrixXcd y = random_matrix(8, 5, rng);
    const StatisticGrid grid = lml_statistic(y, wcb, mobile, 16);
    const std::vector<double> direct = testing::direct_lml_statistic(y, wcb, mobile, 16);
    REQUIRE(grid.dims == std::vector<int>{16});
    CHECK(testing::max_relative_error(direct, grid.values) < 1e-9);
  }
}

TEST_CASE("statistic grid indexing is row-major with the last axis fastest") {
  StatisticGrid grid;
  grid.dims = {2, 3};
  grid.values = {0, 1, 2, 3, 4, 5};
  const int idx00[] = {0, 0};
  const int idx02[] = {0, 2};
  const int idx10[] = {1, 0};
  CHECK(grid.at(idx00) == 0);
  CHECK(grid.at(idx02) == 2);
  CHECK(grid.at(idx10) == 3);
  const int bad[] = {2, 0};
  CHECK_THROWS_AS(grid.at(bad), std::invalid_argument);
  const int short_idx[] = {1};
  CHECK_THROWS_AS(grid.at(short_idx), std::invalid_argument);
}

TEST_CASE("estimate_ml recovers an on-grid path exactly, gain included") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  const int fft = 32;
  const ResponseGridTransform rx(mobile, fft);
  const ResponseGridTransform tx(ap, fft);

  const int true_aoa = 5;
  const int true_aod = 19;
  const std::complex<double> amp{0.8, -0.6};
  const Eigen::VectorXcd u = response_from_phases(mobile, rx.phases(true_aoa));
  const Eigen::VectorXcd a = response_from_phases(ap, tx.phases(true_aod));
  const Eigen::MatrixXcd h = amp * u * a.adjoint();

  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const Eigen::MatrixXcd y = wcb.weights.adjoint() * h * fcb.weights;

  const std::vector<Codebook> aps{fcb};
  const AngleEstimate est = estimate_ml(y, wcb, mobile, aps, ap, fft);
  CHECK_FALSE(est.degenerate);
  CHECK(est.has_aod);
  CHECK(est.ap_index == 0);
  REQUIRE(est.aoa_index == std::vector<int>{true_aoa});
  REQUIRE(est.aod_index == std::vector<int>{true_aod});
  CHECK(est.aoa.element_phase == doctest::Approx(rx.phases(true_aoa).element_phase));
  CHECK(est.aod.element_phase == doctest::Approx(tx.phases(true_aod).element_phase));
  CHECK(std::abs(est.path_gain - amp) < 1e-9);
}

TEST_CASE("estimate_ml peak value agrees with the materialized grid") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  Rng rng(23);
  const Codebook wcb = build_codebook(CodebookKind::adaptive, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::adaptive, ap, 8);
  const Eigen::MatrixXcd y = random_matrix(8, 8, rng);

  const std::vector<Codebook> aps{fcb};
  const AngleEstimate est = estimate_ml(y, wcb, mobile, aps, ap, 16);
  const StatisticGrid grid = ml_statistic(y, wcb, mobile, fcb, ap, 16);

  double best = -1.0;
  for (double v : grid.values) best = std::max(best, v);
  CHECK(est.statistic == doctest::Approx(best).epsilon(1e-12));
  const int idx[] = {est.aoa_index[0], est.aod_index[0]};
  CHECK(grid.at(idx) == doctest::Approx(est.statistic).epsilon(1e-12));
}

TEST_CASE("estimate_ml prefers the earlier transmitter on exact ties") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  Rng rng(24);
  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const Eigen::MatrixXcd y = random_matrix(8, 16, rng);

  const std::vector<Codebook> aps{fcb, fcb};
  const AngleEstimate est = estimate_ml(y, wcb, mobile, aps, ap, 16);
  CHECK(est.ap_index == 0);
}

TEST_CASE("zero observations are flagged degenerate and pinned to index zero") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(8, 16);

  const std::vector<Codebook> aps{fcb};
  const AngleEstimate ml = estimate_ml(y, wcb, mobile, aps, ap, 16);
  CHECK(ml.degenerate);
  CHECK(ml.aoa_index == std::vector<int>{0});
  CHECK(ml.aod_index == std::vector<int>{0});

  const AngleEstimate lml = estimate_lml(y, wcb, mobile, 16);
  CHECK(lml.degenerate);
  CHECK(lml.aoa_index == std::vector<int>{0});
  CHECK_FALSE(lml.has_aod);
}

TEST_CASE("estimate_lml recovers the arrival direction of an on-grid path") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  const int fft = 32;
  const ResponseGridTransform rx(mobile, fft);
  const int true_aoa = 11;
  const Eigen::VectorXcd u = response_from_phases(mobile, rx.phases(true_aoa));
  const Eigen::VectorXcd a = array_response(ap, Angle{0.35, 0.0});
  const Eigen::MatrixXcd h = 2.0 * u * a.adjoint();

  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const Eigen::MatrixXcd y = wcb.weights.adjoint() * h * fcb.weights;

  const AngleEstimate est = estimate_lml(y, wcb, mobile, fft);
  CHECK(est.aoa_index == std::vector<int>{true_aoa});
  CHECK_FALSE(est.has_aod);
}

TEST_CASE("lml and ml agree with each other on the arrival axis") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  Rng rng(25);
  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);

  const Eigen::VectorXcd u = array_response(mobile, Angle{-0.2, 0.0});
  const Eigen::VectorXcd a = array_response(ap, Angle{0.7, 0.0});
  Eigen::MatrixXcd y = 5.0 * wcb.weights.adjoint() * (u * a.adjoint()) * fcb.weights;
  y += 0.01 * random_matrix(8, 16, rng);

  const std::vector<Codebook> aps{fcb};
  const AngleEstimate ml = estimate_ml(y, wcb, mobile, aps, ap, 64);
  const AngleEstimate lml = estimate_lml(y, wcb, mobile, 64);
  CHECK(ml.aoa_index == lml.aoa_index);
}

TEST_CASE("statistic_normalizer implements its formula and validates input") {
  CHECK(statistic_normalizer(2, 16, 16, 16, 16, 0.5) ==
        doctest::Approx(std::sqrt(2.0 * 16.0 * 16.0 / (16.0 * 16.0)) / 0.5));
  CHECK_THROWS_AS(statistic_normalizer(0, 4, 4, 4, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(statistic_normalizer(1, 4, 4, 4, 4, 0.0), std::invalid_argument);
}

TEST_CASE("decision_statistic_mean implements its formula") {
  const std::vector<double> snrs{4.0, 1.0};
  const std::vector<std::complex<double>> gains{{1.0, 0.0}, {0.0, 0.5}};
  const std::complex<double> got =
      decision_statistic_mean(snrs, gains, 512, 16, 16);
  const std::complex<double> want =
      std::sqrt(512.0 / 256.0) * (2.0 * gains[0] + 1.0 * gains[1]);
  CHECK(std::abs(got - want) < 1e-12);

  const std::vector<double> bad_len{1.0};
  CHECK_THROWS_AS(decision_statistic_mean(bad_len, gains, 512, 16, 16), std::invalid_argument);
}

TEST_CASE("misalignment_probability is the gaussian tail of the snr gap") {
  const double gamma_max = 100.0;
  const double gamma_s = 25.0;
  const int pilots = 256;
  const int n = 8;
  const int m = 8;
  const int j = 2;
  const double sigma = std::sqrt(static_cast<double>(n) * m * j * j / pilots);
  const double want = testing::gaussian_q((std::sqrt(gamma_max) - std::sqrt(gamma_s)) / sigma);
  CHECK(misalignment_probability(gamma_max, gamma_s, pilots, n, m, j) ==
        doctest::Approx(want).epsilon(1e-12));

  CHECK(misalignment_probability(gamma_max, gamma_max, pilots, n, m, j) == doctest::Approx(0.5));
  CHECK(misalignment_probability(gamma_max, 0.0, 1 << 20, n, m, j) < 1e-12);
  CHECK_THROWS_AS(misalignment_probability(-1.0, 1.0, pilots, n, m, j), std::invalid_argument);
}

TEST_CASE("estimators reject malformed observations") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 8);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const std::vector<Codebook> aps{fcb};

  const Eigen::MatrixXcd empty;
  CHECK_THROWS_AS(estimate_mp(empty), std::invalid_argument);
  CHECK_THROWS_AS(estimate_ml(empty, wcb, mobile, aps, ap, 16), std::invalid_argument);

  Eigen::MatrixXcd nan_y = Eigen::MatrixXcd::Zero(8, 16);
  nan_y(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(estimate_ml(nan_y, wcb, mobile, aps, ap, 16), std::invalid_argument);

  const Eigen::MatrixXcd wrong_rows = Eigen::MatrixXcd::Zero(7, 16);
  CHECK_THROWS_AS(estimate_ml(wrong_rows, wcb, mobile, aps, ap, 16), std::invalid_argument);
  const Eigen::MatrixXcd wrong_cols = Eigen::MatrixXcd::Zero(8, 15);
  CHECK_THROWS_AS(estimate_ml(wrong_cols, wcb, mobile, aps, ap, 16), std::invalid_argument);
  CHECK_THROWS_AS(lml_statistic(wrong_rows, wcb, mobile, 16), std::invalid_argument);
}

TEST_CASE("oversized joint grids refuse to materialize") {
  const ArrayGeometry mobile = ArrayGeometry::upa(4, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::upa(4, 4, kCarrier);
  const Codebook wcb = build_codebook(CodebookKind::full_sweep, mobile, 16);
  const Codebook fcb = build_codebook(CodebookKind::full_sweep, ap, 16);
  const Eigen::MatrixXcd y = Eigen::MatrixXcd::Identity(16, 16);
  CHECK_THROWS_AS(ml_statistic(y, wcb, mobile, fcb, ap, 128), std::invalid_argument);
}
