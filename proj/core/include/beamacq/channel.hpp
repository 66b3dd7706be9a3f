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
#include <cstdint>
#include <vector>

#include "beamacq/arrays.hpp"
#include "beamacq/rng.hpp"

namespace beamacq {

class Rng;

struct PathComponent {
  std::complex<double> gain;  // amplitude 10^(-PL_dB/20), carrier phase folded in
  Angle aoa;                  // at the mobile
  Angle aod;                  // at the AP
  bool is_los = false;
};

// Sparse multipath channel between one AP and one mobile. The matrix is a
// sum of rank-one outer products, scaled so the per-element magnitude does
// not shrink as arrays grow.
struct Channel {
  std::vector<PathComponent> paths;
  int ap_id = 0;
  int mobile_id = 0;

  // sqrt(total_mobile_antennas * total_ap_antennas / num_paths); evaluated
  // on call so it can never go stale when paths are edited.
  double antenna_gain(const ArrayGeometry& mobile, const ArrayGeometry& ap) const;
};

// H = antenna_gain * sum_s gain_s * u(aoa_s) a(aod_s)^H, sized
// (mobile antennas) x (AP antennas). Throws if the channel has no paths.
Eigen::MatrixXcd channel_matrix(const Channel& ch, const ArrayGeometry& mobile,
                                const ArrayGeometry& ap);

// Reverse direction under angle reciprocity with identical complex path
// gains: antenna_gain * sum_s gain_s * a(aod_s) u(aoa_s)^H, sized
// (AP antennas) x (mobile antennas).
Eigen::MatrixXcd uplink_channel_matrix(const Channel& ch, const ArrayGeometry& mobile,
                                       const ArrayGeometry& ap);

// Received downlink SNR after steering both ends at the estimated
// directions: tx_power * |u^H H a|^2 / noise_power.
double post_training_snr(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& mobile_steer,
                         const Eigen::VectorXcd& ap_steer, double tx_power_w,
                         double noise_power_w);
double post_training_snr(const Channel& ch, const ArrayGeometry& mobile, const ArrayGeometry& ap,
                         const Angle& aoa_hat, const Angle& aod_hat, double tx_power_w,
                         double noise_power_w);

// Close-in path loss in dB at 28-GHz-class carriers:
// 32.4 + 20 log10(f/1GHz) + 10 n log10(d/1m), n = 2.0 (LoS) / 3.2 (NLoS).
// Distances below 1 m are clamped to 1 m; each clamp increments *clamps
// when a counter is supplied.
double path_loss_db(double distance_m, bool line_of_sight, double carrier_hz,
                    std::uint64_t* clamps = nullptr);

// Thermal noise floor over a bandwidth, with receiver noise figure:
// -174 dBm/Hz + 10 log10(B) + NF, returned in watts.
double noise_power_w(double bandwidth_hz, double noise_figure_db);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Endpoint positions for one AP-mobile link, plus the blockage state that
// decides which path-loss exponent the direct path sees.
struct LinkGeometry {
  Eigen::Vector3d ap_position_m = Eigen::Vector3d::Zero();
  Eigen::Vector3d mobile_position_m = Eigen::Vector3d::Zero();
  bool line_of_sight = true;
};

struct ChannelSampleStats {
  std::uint64_t distance_clamps = 0;
};

// Draws a channel realization. A line-of-sight link gets one geometric
// direct path (bearing-derived angles, distance-derived phase) plus
// num_nlos_paths scattered paths; a blocked link gets the scattered paths
// only. Scattered paths draw angles and phase uniformly and add a uniform
// [0, 10] dB excess loss on top of the NLoS path-loss law.
Channel sample_channel(const LinkGeometry& link, const ArrayGeometry& mobile,
                       const ArrayGeometry& ap, int num_nlos_paths, Rng& rng,
                       ChannelSampleStats* stats = nullptr);

// Exponential holding time of the current path, mean 1/rate seconds.
double sample_path_duration(double blockage_rate_hz, Rng& rng);

}  // namespace beamacq
