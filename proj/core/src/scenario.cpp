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

#include "beamacq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace beamacq {

namespace {

constexpr const char* kTopologyHeader = "beamacq-topology v1";

[[noreturn]] void topology_error(int line, const std::string& what) {
  throw std::runtime_error("topology line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& raw) {
  std::string s = raw;
  if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_numbers(std::istringstream& in, std::size_t count, int line) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    if (!(in >> out[i])) topology_error(line, "expected " + std::to_string(count) + " numbers");
  std::string extra;
  if (in >> extra) topology_error(line, "trailing content '" + extra + "'");
  return out;
}

Eigen::VectorXcd scaled_response(const ArrayGeometry& geom, const Angle& angle, double scale) {
  const PhasePair ph = response_phases(geom, angle);
  return response_from_phases(geom,
                              {ph.subarray_phase * scale, ph.element_phase * scale});
}

// Channel matrix with every response evaluated at a scaled frequency while
// the path gains keep their carrier values.
Eigen::MatrixXcd scaled_channel_matrix(const Channel& ch, const ArrayGeometry& mobile,
                                       const ArrayGeometry& ap, double scale) {
  const double nu = ch.antenna_gain(mobile, ap);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(mobile.total_elements(), ap.total_elements());
  for (const PathComponent& p : ch.paths) {
    const Eigen::VectorXcd u = scaled_response(mobile, p.aoa, scale);
    const Eigen::VectorXcd a = scaled_response(ap, p.aod, scale);
    h.noalias() += (nu * p.gain) * (u * a.adjoint());
  }
  return h;
}

}  // namespace

bool Box::contains(const Eigen::Vector3d& p) const {
  return (p.array() >= min_corner.array()).all() && (p.array() <= max_corner.array()).all();
}

bool segment_intersects_box(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Box& box) {
  double t_enter = 0.0;
  double t_exit = 1.0;
  const Eigen::Vector3d d = b - a;
  for (int axis = 0; axis < 3; ++axis) {
    if (std::abs(d[axis]) < 1e-12) {
      if (a[axis] < box.min_corner[axis] || a[axis] > box.max_corner[axis]) return false;
      continue;
    }
    double lo = (box.min_corner[axis] - a[axis]) / d[axis];
    double hi = (box.max_corner[axis] - a[axis]) / d[axis];
    if (lo > hi) std::swap(lo, hi);
    t_enter = std::max(t_enter, lo);
    t_exit = std::min(t_exit, hi);
    if (t_enter > t_exit) return false;
  }
  return true;
}

void Network::validate() const {
  ap_geom.validate();
  mobile_geom.validate();
  if (ap_positions_m.empty()) throw std::invalid_argument("network: no APs");
  for (const Box& b : blockers)
    if ((b.max_corner.array() < b.min_corner.array()).any())
      throw std::invalid_argument("network: inverted blocker corners");
}

Network triangle_network(double side_m, double ap_height_m, const ArrayGeometry& ap_geom,
                         const ArrayGeometry& mobile_geom) {
  if (side_m <= 0.0) throw std::invalid_argument("triangle_network: side must be > 0");
  const double circumradius = side_m / std::sqrt(3.0);
  Network net;
  net.ap_geom = ap_geom;
  net.mobile_geom = mobile_geom;
  net.ap_positions_m = {
      {0.0, circumradius, ap_height_m},
      {-0.5 * side_m, -0.5 * circumradius, ap_height_m},
      {0.5 * side_m, -0.5 * circumradius, ap_height_m},
  };
  net.validate();
  return net;
}

Network load_topology(std::istream& in, const ArrayGeometry& ap_geom,
                      const ArrayGeometry& mobile_geom) {
  Network net;
  net.ap_geom = ap_geom;
  net.mobile_geom = mobile_geom;

  std::string raw;
  int line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = strip(raw);
    if (content.empty()) continue;
    if (!header_seen) {
      if (content != kTopologyHeader)
        topology_error(line, std::string("expected header '") + kTopologyHeader + "'");
      header_seen = true;
      continue;
    }
    std::istringstream fields(content);
    std::string record;
    fields >> record;
    if (record == "ap") {
      const auto v = parse_numbers(fields, 3, line);
      net.ap_positions_m.emplace_back(v[0], v[1], v[2]);
    } else if (record == "mobile") {
      const auto v = parse_numbers(fields, 3, line);
      net.mobile_positions_m.emplace_back(v[0], v[1], v[2]);
    } else if (record == "blocker") {
      const auto v = parse_numbers(fields, 6, line);
      Box b;
      b.min_corner = {v[0], v[1], v[2]};
      b.max_corner = {v[3], v[4], v[5]};
      if ((b.max_corner.array() < b.min_corner.array()).any())
        topology_error(line, "blocker max corner below min corner");
      net.blockers.push_back(b);
    } else {
      topology_error(line, "unknown record '" + record + "'");
    }
  }
  if (!header_seen) topology_error(line, std::string("missing header '") + kTopologyHeader + "'");
  net.validate();
  return net;
}

Network load_topology_file(const std::string& path, const ArrayGeometry& ap_geom,
                           const ArrayGeometry& mobile_geom) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("topology: cannot open " + path);
  return load_topology(in, ap_geom, mobile_geom);
}

bool line_of_sight(const Network& net, int ap, int mobile) {
  if (ap < 0 || ap >= static_cast<int>(net.ap_positions_m.size()))
    throw std::invalid_argument("line_of_sight: AP index out of range");
  if (mobile < 0 || mobile >= static_cast<int>(net.mobile_positions_m.size()))
    throw std::invalid_argument("line_of_sight: mobile index out of range");
  const Eigen::Vector3d& a = net.ap_positions_m[static_cast<std::size_t>(ap)];
  const Eigen::Vector3d& b = net.mobile_positions_m[static_cast<std::size_t>(mobile)];
  for (const Box& box : net.blockers)
    if (segment_intersects_box(a, b, box)) return false;
  return true;
}

std::vector<Eigen::Vector3d> scatter_positions(double half_extent_m, double height_m, int count,
                                               std::span<const Box> blockers, Rng& rng) {
  if (half_extent_m <= 0.0) throw std::invalid_argument("scatter_positions: extent must be > 0");
  if (count < 0) throw std::invalid_argument("scatter_positions: count must be >= 0");
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      const Eigen::Vector3d p(rng.uniform(-half_extent_m, half_extent_m),
                              rng.uniform(-half_extent_m, half_extent_m), height_m);
      if (std::none_of(blockers.begin(), blockers.end(),
                       [&](const Box& b) { return b.contains(p); })) {
        out.push_back(p);
        placed = true;
      }
    }
    if (!placed)
      throw std::runtime_error("scatter_positions: blockers cover the placement area");
  }
  return out;
}

LinkSystem build_link_system(const Network& net, int num_nlos_paths, Rng& rng,
                             ChannelSampleStats* stats) {
  net.validate();
  LinkSystem sys;
  sys.mobile_geom = net.mobile_geom;
  sys.ap_geom = net.ap_geom;
  sys.channels.resize(net.ap_positions_m.size());
  for (std::size_t l = 0; l < net.ap_positions_m.size(); ++l) {
    auto& row = sys.channels[l];
    row.reserve(net.mobile_positions_m.size());
    for (std::size_t k = 0; k < net.mobile_positions_m.size(); ++k) {
      LinkGeometry link;
      link.ap_position_m = net.ap_positions_m[l];
      link.mobile_position_m = net.mobile_positions_m[k];
      link.line_of_sight = line_of_sight(net, static_cast<int>(l), static_cast<int>(k));
      Channel ch = sample_channel(link, net.mobile_geom, net.ap_geom, num_nlos_paths, rng, stats);
      ch.ap_id = static_cast<int>(l);
      ch.mobile_id = static_cast<int>(k);
      row.push_back(std::move(ch));
    }
  }
  return sys;
}

std::vector<DataAssignment> schedule_fdm(const InitialAccessResult& ia, int num_subbands) {
  if (num_subbands < 1) throw std::invalid_argument("schedule_fdm: need at least one sub-band");
  std::vector<DataAssignment> plan;
  for (std::size_t l = 0; l < ia.schedules.size(); ++l) {
    std::vector<DataAssignment> local;
    for (const ApUplinkReport& report : ia.schedules[l]) {
      const MobileOutcome& out = ia.mobiles[static_cast<std::size_t>(report.mobile_id)];
      if (out.serving_ap != static_cast<int>(l)) continue;
      DataAssignment a;
      a.mobile_id = report.mobile_id;
      a.ap = static_cast<int>(l);
      a.ap_beam = report.aod;
      a.mobile_beam = out.estimate.aoa;
      local.push_back(a);
    }
    std::sort(local.begin(), local.end(), [](const DataAssignment& a, const DataAssignment& b) {
      if (a.ap_beam.element_phase != b.ap_beam.element_phase)
        return a.ap_beam.element_phase < b.ap_beam.element_phase;
      return a.mobile_id < b.mobile_id;
    });
    for (std::size_t i = 0; i < local.size(); ++i)
      local[i].subband = static_cast<int>(i) % num_subbands;
    plan.insert(plan.end(), local.begin(), local.end());
  }
  return plan;
}

std::vector<double> data_plane_sinr(const LinkSystem& sys, std::span<const DataAssignment> plan,
                                    const DataPlaneConfig& cfg) {
  sys.validate();
  if (cfg.subband_bandwidth_hz <= 0.0)
    throw std::invalid_argument("data plane: sub-band bandwidth must be > 0");
  if (cfg.num_subbands < 1) throw std::invalid_argument("data plane: need at least one sub-band");
  if (cfg.ap_power_w < 0.0) throw std::invalid_argument("data plane: power must be >= 0");
  if (cfg.sinr_cap <= 0.0) throw std::invalid_argument("data plane: cap must be > 0");

  const double noise = noise_power_w(cfg.subband_bandwidth_hz, cfg.noise_figure_db);
  const double carrier = sys.ap_geom.carrier_hz;
  const auto subband_scale = [&](int b) {
    const double offset = (b - 0.5 * (cfg.num_subbands - 1)) * cfg.subband_bandwidth_hz;
    return (carrier + offset) / carrier;
  };

  std::vector<Eigen::VectorXcd> rx_beams(plan.size());
  std::vector<Eigen::VectorXcd> tx_beams(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (plan[i].subband < 0 || plan[i].subband >= cfg.num_subbands)
      throw std::invalid_argument("data plane: assignment outside the sub-band range");
    rx_beams[i] = steering_beam_from_phases(sys.mobile_geom, plan[i].mobile_beam, 1.0).weights;
    tx_beams[i] = steering_beam_from_phases(sys.ap_geom, plan[i].ap_beam, 1.0).weights;
  }

  std::vector<double> sinr(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const DataAssignment& a = plan[i];
    const double scale = subband_scale(a.subband);
    const auto link_power = [&](int ap, const Eigen::VectorXcd& tx_beam) {
      const Channel& ch =
          sys.channels[static_cast<std::size_t>(ap)][static_cast<std::size_t>(a.mobile_id)];
      const Eigen::MatrixXcd h = scaled_channel_matrix(ch, sys.mobile_geom, sys.ap_geom, scale);
      return cfg.ap_power_w * std::norm(rx_beams[i].dot(h * tx_beam));
    };
    const double signal = link_power(a.ap, tx_beams[i]);
    double interference = 0.0;
    for (std::size_t j = 0; j < plan.size(); ++j) {
      if (j == i || plan[j].subband != a.subband) continue;
      interference += link_power(plan[j].ap, tx_beams[j]);
    }
    sinr[i] = std::min(signal / (noise + interference), cfg.sinr_cap);
  }
  return sinr;
}

}  // namespace beamacq
