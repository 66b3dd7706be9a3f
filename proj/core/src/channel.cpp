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

#include "beamacq/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamacq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watts_to_dbm(double watts) {
  if (watts <= 0.0) throw std::invalid_argument("watts_to_dbm: power must be > 0");
  return 10.0 * std::log10(watts / 1e-3);
}

double noise_power_w(double bandwidth_hz, double noise_figure_db) {
  if (bandwidth_hz <= 0.0) throw std::invalid_argument("noise_power: bandwidth must be > 0");
  const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
  return dbm_to_watts(dbm);
}

double path_loss_db(double distance_m, bool line_of_sight, double carrier_hz,
                    std::uint64_t* clamps) {
  if (carrier_hz <= 0.0) throw std::invalid_argument("path_loss: carrier must be > 0");
  if (distance_m < 0.0) throw std::invalid_argument("path_loss: distance must be >= 0");
  double d = distance_m;
  if (d < 1.0) {
    d = 1.0;
    if (clamps != nullptr) ++*clamps;
  }
  const double exponent = line_of_sight ? 2.0 : 3.2;
  return 32.4 + 20.0 * std::log10(carrier_hz / 1e9) + 10.0 * exponent * std::log10(d);
}

double Channel::antenna_gain(const ArrayGeometry& mobile, const ArrayGeometry& ap) const {
  if (paths.empty()) throw std::invalid_argument("channel: no paths");
  return std::sqrt(static_cast<double>(mobile.total_elements()) *
                   static_cast<double>(ap.total_elements()) /
                   static_cast<double>(paths.size()));
}

Eigen::MatrixXcd channel_matrix(const Channel& ch, const ArrayGeometry& mobile,
                                const ArrayGeometry& ap) {
  const double nu = ch.antenna_gain(mobile, ap);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(mobile.total_elements(), ap.total_elements());
  for (const PathComponent& p : ch.paths) {
    const Eigen::VectorXcd u = array_response(mobile, p.aoa);
    const Eigen::VectorXcd a = array_response(ap, p.aod);
    h.noalias() += (nu * p.gain) * (u * a.adjoint());
  }
  return h;
}

Eigen::MatrixXcd uplink_channel_matrix(const Channel& ch, const ArrayGeometry& mobile,
                                       const ArrayGeometry& ap) {
  const double nu = ch.antenna_gain(mobile, ap);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(ap.total_elements(), mobile.total_elements());
  for (const PathComponent& p : ch.paths) {
    const Eigen::VectorXcd a = array_response(ap, p.aod);
    const Eigen::VectorXcd u = array_response(mobile, p.aoa);
    h.noalias() += (nu * p.gain) * (a * u.adjoint());
  }
  return h;
}

double post_training_snr(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& mobile_steer,
                         const Eigen::VectorXcd& ap_steer, double tx_power_w,
                         double noise_power_w) {
  if (noise_power_w <= 0.0) throw std::invalid_argument("post_training_snr: noise must be > 0");
  if (tx_power_w < 0.0) throw std::invalid_argument("post_training_snr: power must be >= 0");
  if (h.rows() != mobile_steer.size() || h.cols() != ap_steer.size())
    throw std::invalid_argument("post_training_snr: dimension mismatch");
  const std::complex<double> c = mobile_steer.dot(h * ap_steer);  // u^H H a
  return tx_power_w * std::norm(c) / noise_power_w;
}

double post_training_snr(const Channel& ch, const ArrayGeometry& mobile, const ArrayGeometry& ap,
                         const Angle& aoa_hat, const Angle& aod_hat, double tx_power_w,
                         double noise_power_w) {
  return post_training_snr(channel_matrix(ch, mobile, ap), array_response(mobile, aoa_hat),
                           array_response(ap, aod_hat), tx_power_w, noise_power_w);
}

Channel sample_channel(const LinkGeometry& link, const ArrayGeometry& mobile,
                       const ArrayGeometry& ap, int num_nlos_paths, Rng& rng,
                       ChannelSampleStats* stats) {
  if (num_nlos_paths < 0) throw std::invalid_argument("sample_channel: num_nlos_paths < 0");
  if (!link.line_of_sight && num_nlos_paths == 0)
    throw std::invalid_argument("sample_channel: blocked link needs at least one scattered path");
  mobile.validate();
  ap.validate();
  if (mobile.carrier_hz != ap.carrier_hz)
    throw std::invalid_argument("sample_channel: carrier mismatch between arrays");

  const Eigen::Vector3d delta = link.ap_position_m - link.mobile_position_m;
  const double distance = delta.norm();
  const double lambda = kSpeedOfLight / ap.carrier_hz;
  std::uint64_t* clamps = (stats != nullptr) ? &stats->distance_clamps : nullptr;

  Channel ch;
  if (link.line_of_sight) {
    PathComponent p;
    p.is_los = true;
    // Arrival direction points from the mobile back toward the AP, and
    // vice versa for departure. Elevation is the tilt from horizontal.
    p.aoa.azimuth_rad = std::atan2(delta.y(), delta.x());
    p.aod.azimuth_rad = std::atan2(-delta.y(), -delta.x());
    const double tilt = (distance > 0.0)
        ? std::asin(std::clamp(std::abs(delta.z()) / distance, 0.0, 1.0))
        : 0.0;
    p.aoa.elevation_rad = tilt;
    p.aod.elevation_rad = tilt;
    const double loss_db = path_loss_db(distance, true, ap.carrier_hz, clamps);
    p.gain = std::polar(std::pow(10.0, -loss_db / 20.0), -kTwoPi * distance / lambda);
    ch.paths.push_back(p);
  }
  for (int s = 0; s < num_nlos_paths; ++s) {
    PathComponent p;
    p.is_los = false;
    p.aoa.azimuth_rad = rng.uniform(0.0, kTwoPi);
    if (mobile.kind == ArrayKind::upa)
      p.aoa.elevation_rad = rng.uniform(0.0, 0.5 * std::numbers::pi);
    p.aod.azimuth_rad = rng.uniform(0.0, kTwoPi);
    if (ap.kind == ArrayKind::upa)
      p.aod.elevation_rad = rng.uniform(0.0, 0.5 * std::numbers::pi);
    const double loss_db =
        path_loss_db(distance, false, ap.carrier_hz, clamps) + rng.uniform(0.0, 10.0);
    p.gain = std::polar(std::pow(10.0, -loss_db / 20.0), rng.uniform(0.0, kTwoPi));
    ch.paths.push_back(p);
  }
  return ch;
}

double sample_path_duration(double blockage_rate_hz, Rng& rng) {
  if (blockage_rate_hz <= 0.0)
    throw std::invalid_argument("sample_path_duration: rate must be > 0");
  return rng.exponential(blockage_rate_hz);
}

}  // namespace beamacq
