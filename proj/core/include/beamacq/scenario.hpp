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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "beamacq/arrays.hpp"
#include "beamacq/channel.hpp"
#include "beamacq/rng.hpp"
#include "beamacq/signaling.hpp"

namespace beamacq {

// Axis-aligned blocker volume.
struct Box {
  Eigen::Vector3d min_corner = Eigen::Vector3d::Zero();
  Eigen::Vector3d max_corner = Eigen::Vector3d::Zero();

  bool contains(const Eigen::Vector3d& p) const;
};

bool segment_intersects_box(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Box& box);

// Deployment: AP and mobile positions plus blocker volumes, with one array
// model per side.
struct Network {
  ArrayGeometry ap_geom;
  ArrayGeometry mobile_geom;
  std::vector<Eigen::Vector3d> ap_positions_m;
  std::vector<Eigen::Vector3d> mobile_positions_m;
  std::vector<Box> blockers;

  void validate() const;
};

// Three APs on the corners of an equilateral triangle centered on the
// origin, all at one height.
Network triangle_network(double side_m, double ap_height_m, const ArrayGeometry& ap_geom,
                         const ArrayGeometry& mobile_geom);

// Text deployment format. The first non-blank line must read
// "beamacq-topology v1"; the records are
//   ap <x> <y> <z>
//   mobile <x> <y> <z>
//   blocker <xmin> <ymin> <zmin> <xmax> <ymax> <zmax>
// with '#' comments and blank lines ignored. Errors carry the offending
// line number.
Network load_topology(std::istream& in, const ArrayGeometry& ap_geom,
                      const ArrayGeometry& mobile_geom);
Network load_topology_file(const std::string& path, const ArrayGeometry& ap_geom,
                           const ArrayGeometry& mobile_geom);

// True when no blocker cuts the AP-mobile segment.
bool line_of_sight(const Network& net, int ap, int mobile);

// Uniform positions over the centered square [-half, half]^2 at a fixed
// height, resampling draws that land inside a blocker.
std::vector<Eigen::Vector3d> scatter_positions(double half_extent_m, double height_m, int count,
                                               std::span<const Box> blockers, Rng& rng);

// Draws one channel per AP-mobile pair, direct path present exactly where
// the blockers leave the segment clear. Draw order is AP-major.
LinkSystem build_link_system(const Network& net, int num_nlos_paths, Rng& rng,
                             ChannelSampleStats* stats = nullptr);

// Frequency-division data plane laid over an acquisition result.
struct DataPlaneConfig {
  double subband_bandwidth_hz = 100e6;
  int num_subbands = 2;
  double ap_power_w = 1.0;  // per sub-band
  double noise_figure_db = 7.0;
  double sinr_cap = 1000.0;
};

struct DataAssignment {
  int mobile_id = 0;
  int ap = 0;
  int subband = 0;
  PhasePair ap_beam;
  PhasePair mobile_beam;
};

// One assignment per served mobile. Each AP orders its mobiles by
// departure element phase (ties to the smaller id) and hands out sub-bands
// round-robin in that order.
std::vector<DataAssignment> schedule_fdm(const InitialAccessResult& ia, int num_subbands);

// Linear SINR per assignment. Responses are evaluated at each sub-band's
// center frequency, so beams designed at the carrier squint off target;
// every other assignment on the same sub-band interferes. Values are
// capped at cfg.sinr_cap.
std::vector<double> data_plane_sinr(const LinkSystem& sys, std::span<const DataAssignment> plan,
                                    const DataPlaneConfig& cfg);

}  // namespace beamacq
