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
#include <stdexcept>

#include "beamacq/channel.hpp"
#include "support/oracles.hpp"

using namespace beamacq;

namespace {
constexpr double kCarrier = 28e9;
}

TEST_CASE("dbm and watts round-trip") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(watts_to_dbm(dbm_to_watts(17.0)) == doctest::Approx(17.0).epsilon(1e-12));
  CHECK_THROWS_AS(watts_to_dbm(0.0), std::invalid_argument);
}

TEST_CASE("noise power follows the thermal floor plus noise figure") {
  // -174 dBm/Hz + 10 log10(250 kHz) + 7 dB = -113.02 dBm.
  const double w = noise_power_w(250e3, 7.0);
  CHECK(watts_to_dbm(w) == doctest::Approx(-174.0 + 10.0 * std::log10(250e3) + 7.0).epsilon(1e-12));
  CHECK_THROWS_AS(noise_power_w(0.0, 7.0), std::invalid_argument);
}

TEST_CASE("path loss matches hand-evaluated close-in values") {
  // 32.4 + 20 log10(28) at the 1 m reference.
  const double ref = 32.4 + 20.0 * std::log10(28.0);
  CHECK(path_loss_db(1.0, true, kCarrier) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(path_loss_db(20.0, true, kCarrier) ==
        doctest::Approx(ref + 20.0 * std::log10(20.0)).epsilon(1e-12));
  CHECK(path_loss_db(20.0, false, kCarrier) ==
        doctest::Approx(ref + 32.0 * std::log10(20.0)).epsilon(1e-12));
  CHECK(path_loss_db(50.0, false, kCarrier) > path_loss_db(50.0, true, kCarrier));
}

TEST_CASE("sub-meter distances clamp to the reference and count") {
  std::uint64_t clamps = 0;
  const double at_clamp = path_loss_db(0.2, true, kCarrier, &clamps);
  CHECK(at_clamp == doctest::Approx(path_loss_db(1.0, true, kCarrier)));
  CHECK(clamps == 1);
  path_loss_db(5.0, true, kCarrier, &clamps);
  CHECK(clamps == 1);
  CHECK_THROWS_AS(path_loss_db(-1.0, true, kCarrier), std::invalid_argument);
}

TEST_CASE("channel matrix is the scaled sum of outer products") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);

  Channel ch;
  PathComponent p;
  p.gain = {0.3, -0.4};
  p.aoa = {0.5, 0.0};
  p.aod = {-0.7, 0.0};
  ch.paths.push_back(p);

  CHECK(ch.antenna_gain(mobile, ap) == doctest::Approx(std::sqrt(8.0 * 16.0 / 1.0)));

  const Eigen::MatrixXcd h = channel_matrix(ch, mobile, ap);
  REQUIRE(h.rows() == 8);
  REQUIRE(h.cols() == 16);
  const Eigen::VectorXcd u = array_response(mobile, p.aoa);
  const Eigen::VectorXcd a = array_response(ap, p.aod);
  const Eigen::MatrixXcd want = ch.antenna_gain(mobile, ap) * p.gain * (u * a.adjoint());
  CHECK((h - want).cwiseAbs().maxCoeff() < 1e-12);

  // Per-element magnitude stays at |gain| regardless of array size.
  CHECK(std::abs(h(3, 5)) == doctest::Approx(std::abs(p.gain)).epsilon(1e-12));

  PathComponent q = p;
  q.aoa.azimuth_rad = -0.2;
  ch.paths.push_back(q);
  CHECK(ch.antenna_gain(mobile, ap) == doctest::Approx(std::sqrt(8.0 * 16.0 / 2.0)));
}

TEST_CASE("uplink matrix reverses the link with the same complex gains") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);

  Channel ch;
  PathComponent p;
  p.gain = {0.3, -0.4};
  p.aoa = {0.5, 0.0};
  p.aod = {-0.7, 0.0};
  ch.paths.push_back(p);

  const Eigen::MatrixXcd up = uplink_channel_matrix(ch, mobile, ap);
  REQUIRE(up.rows() == 16);
  REQUIRE(up.cols() == 8);
  const Eigen::VectorXcd u = array_response(mobile, p.aoa);
  const Eigen::VectorXcd a = array_response(ap, p.aod);
  const Eigen::MatrixXcd want = ch.antenna_gain(mobile, ap) * p.gain * (a * u.adjoint());
  CHECK((up - want).cwiseAbs().maxCoeff() < 1e-12);

  // Matched beamforming sees the same coupling in both directions.
  const std::complex<double> down_c = u.dot(channel_matrix(ch, mobile, ap) * a);
  const std::complex<double> up_c = a.dot(up * u);
  CHECK(std::abs(down_c - up_c) < 1e-12);
}

TEST_CASE("post_training_snr evaluates the beamformed link budget") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);

  Channel ch;
  PathComponent p;
  p.gain = {0.01, 0.0};
  p.aoa = {0.5, 0.0};
  p.aod = {-0.7, 0.0};
  ch.paths.push_back(p);

  const double tx = 0.1;
  const double noise = 1e-9;
  const double snr = post_training_snr(ch, mobile, ap, p.aoa, p.aod, tx, noise);
  const double coupling = ch.antenna_gain(mobile, ap) * std::abs(p.gain);
  CHECK(snr == doctest::Approx(tx * coupling * coupling / noise).epsilon(1e-9));

  // Steering far away from the path collects less.
  CHECK(post_training_snr(ch, mobile, ap, Angle{-1.2, 0.0}, p.aod, tx, noise) < snr);

  const Eigen::MatrixXcd h = channel_matrix(ch, mobile, ap);
  CHECK_THROWS_AS(post_training_snr(h, Eigen::VectorXcd::Zero(3), Eigen::VectorXcd::Zero(16), tx,
                                    noise),
                  std::invalid_argument);
  CHECK_THROWS_AS(post_training_snr(ch, mobile, ap, p.aoa, p.aod, tx, 0.0), std::invalid_argument);
}

TEST_CASE("line-of-sight links get a geometric direct path plus scatter") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);

  LinkGeometry link;
  link.mobile_position_m = {0.0, 0.0, 1.5};
  link.ap_position_m = {30.0, 40.0, 6.0};
  link.line_of_sight = true;

  Rng rng(40);
  const Channel ch = sample_channel(link, mobile, ap, 3, rng);
  REQUIRE(ch.paths.size() == 4);
  CHECK(ch.paths[0].is_los);
  for (std::size_t s = 1; s < ch.paths.size(); ++s) CHECK_FALSE(ch.paths[s].is_los);

  const Eigen::Vector3d delta = link.ap_position_m - link.mobile_position_m;
  const double distance = delta.norm();
  CHECK(ch.paths[0].aoa.azimuth_rad == doctest::Approx(std::atan2(delta.y(), delta.x())));
  CHECK(ch.paths[0].aod.azimuth_rad == doctest::Approx(std::atan2(-delta.y(), -delta.x())));
  CHECK(std::abs(ch.paths[0].gain) ==
        doctest::Approx(std::pow(10.0, -path_loss_db(distance, true, kCarrier) / 20.0)));

  // Scattered paths are weaker than the same-distance blocked-law floor.
  const double nlos_amp = std::pow(10.0, -path_loss_db(distance, false, kCarrier) / 20.0);
  for (std::size_t s = 1; s < ch.paths.size(); ++s) {
    CHECK(std::abs(ch.paths[s].gain) <= nlos_amp * (1.0 + 1e-12));
  }
}

TEST_CASE("blocked links carry scattered paths only") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);

  LinkGeometry link;
  link.ap_position_m = {25.0, 0.0, 6.0};
  link.line_of_sight = false;

  Rng rng(41);
  const Channel ch = sample_channel(link, mobile, ap, 3, rng);
  REQUIRE(ch.paths.size() == 3);
  for (const PathComponent& p : ch.paths) CHECK_FALSE(p.is_los);

  Rng rng2(41);
  CHECK_THROWS_AS(sample_channel(link, mobile, ap, 0, rng2), std::invalid_argument);
}

TEST_CASE("channel draws replay under one seed") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  LinkGeometry link;
  link.ap_position_m = {60.0, -10.0, 6.0};
  link.line_of_sight = true;

  Rng a(42);
  Rng b(42);
  const Channel ca = sample_channel(link, mobile, ap, 3, a);
  const Channel cb = sample_channel(link, mobile, ap, 3, b);
  REQUIRE(ca.paths.size() == cb.paths.size());
  for (std::size_t s = 0; s < ca.paths.size(); ++s) {
    CHECK(ca.paths[s].gain == cb.paths[s].gain);
    CHECK(ca.paths[s].aoa.azimuth_rad == cb.paths[s].aoa.azimuth_rad);
    CHECK(ca.paths[s].aod.azimuth_rad == cb.paths[s].aod.azimuth_rad);
  }
}

TEST_CASE("close links increment the clamp counter") {
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 4, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 8, kCarrier);
  LinkGeometry link;
  link.ap_position_m = {0.3, 0.0, 0.0};
  link.line_of_sight = true;

  Rng rng(43);
  ChannelSampleStats stats;
  sample_channel(link, mobile, ap, 2, rng, &stats);
  // One clamp for the direct path, one per scattered path.
  CHECK(stats.distance_clamps == 3);
}

TEST_CASE("path duration draws are exponential with the blockage rate") {
  Rng rng(44);
  std::vector<double> xs(20000);
  for (double& x : xs) x = sample_path_duration(4.0, rng);
  CHECK(testing::mean(xs) == doctest::Approx(0.25).epsilon(0.05));
  CHECK_THROWS_AS(sample_path_duration(0.0, rng), std::invalid_argument);
}
