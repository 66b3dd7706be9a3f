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

#include "beamacq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "beamacq/channel.hpp"
#include "beamacq/grid_transform.hpp"

namespace beamacq {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return (v.size() % 2 == 1) ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Floors at -300 dB so empty or all-failed cells stay finite.
double to_db_floored(double linear) { return 10.0 * std::log10(std::max(linear, 1e-30)); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

LinkStudySpec link_spec_from(const SimulationConfig& cfg) {
  LinkStudySpec spec;
  spec.ap_geom = make_geometry(cfg.arrays.ap_kind, cfg.arrays.ap_subarrays,
                               cfg.arrays.ap_subarray_elements, cfg.arrays.carrier_hz);
  spec.mobile_geom = make_geometry(cfg.arrays.mobile_kind, cfg.arrays.mobile_subarrays,
                                   cfg.arrays.mobile_subarray_elements, cfg.arrays.carrier_hz);
  spec.repetitions = cfg.link.repetitions;
  spec.fft_size = cfg.link.fft_size;
  spec.ap_tone_power_w = dbm_to_watts(cfg.link.ap_tone_power_dbm);
  spec.mobile_tone_power_w = dbm_to_watts(cfg.link.mobile_tone_power_dbm);
  spec.noise_power_w = noise_power_w(cfg.link.tone_bandwidth_hz, cfg.link.noise_figure_db);
  spec.ack_threshold_snr = db_to_linear(cfg.link.ack_threshold_db);
  spec.distance_min_m = cfg.link.distance_min_m;
  spec.distance_max_m = cfg.link.distance_max_m;
  spec.nlos_paths = cfg.link.nlos_paths;
  return spec;
}

struct EnsembleStats {
  double acknowledged_fraction = 0.0;
  double median_snr_db = 0.0;
  double median_bound_snr_db = 0.0;
  double median_loss_db = 0.0;
};

EnsembleStats summarize(const std::vector<LinkTrial>& trials) {
  EnsembleStats s;
  if (trials.empty()) return s;
  std::vector<double> achieved, bound;
  int acked = 0;
  for (const LinkTrial& t : trials) {
    achieved.push_back(t.achieved_snr);
    bound.push_back(t.bound_snr);
    if (t.acknowledged) ++acked;
  }
  s.acknowledged_fraction = static_cast<double>(acked) / static_cast<double>(trials.size());
  s.median_snr_db = to_db_floored(median(achieved));
  s.median_bound_snr_db = to_db_floored(median(bound));
  s.median_loss_db = s.median_bound_snr_db - s.median_snr_db;
  return s;
}

}  // namespace

ArrayGeometry make_geometry(const std::string& kind, int subarrays, int subarray_elements,
                            double carrier_hz) {
  if (kind == "ula") return ArrayGeometry::ula(subarrays, subarray_elements, carrier_hz);
  if (kind == "upa") return ArrayGeometry::upa(subarrays, subarray_elements, carrier_hz);
  throw std::invalid_argument("unknown array kind: " + kind);
}

double best_grid_pair_gain(const Eigen::MatrixXcd& h, const ArrayGeometry& mobile,
                           const ArrayGeometry& ap, int fft_size) {
  const ResponseGridTransform rxT(mobile, fft_size);
  const ResponseGridTransform txT(ap, fft_size);
  if (h.rows() != mobile.total_elements() || h.cols() != ap.total_elements())
    throw std::invalid_argument("best_grid_pair_gain: matrix does not fit the arrays");
  Eigen::MatrixXcd left(rxT.grid_points(), h.cols());
  for (Eigen::Index c = 0; c < h.cols(); ++c) left.col(c) = rxT.transform(h.col(c));
  double best = 0.0;
  for (int i = 0; i < rxT.grid_points(); ++i) {
    const Eigen::VectorXcd row = txT.transform_right(left.row(i).transpose());
    best = std::max(best, row.cwiseAbs2().maxCoeff());
  }
  return best;
}

LinkTrial run_link_trial(const LinkStudySpec& spec, Rng trial_rng) {
  if (spec.distance_min_m <= 0.0 || spec.distance_max_m < spec.distance_min_m)
    throw std::invalid_argument("link study: bad distance range");

  Rng place = trial_rng.fork(10);
  const double distance = place.uniform(spec.distance_min_m, spec.distance_max_m);
  const double bearing = place.uniform(0.0, 2.0 * std::numbers::pi);
  LinkGeometry geo;
  geo.mobile_position_m = Eigen::Vector3d::Zero();
  geo.ap_position_m =
      Eigen::Vector3d(distance * std::cos(bearing), distance * std::sin(bearing), 0.0);
  geo.line_of_sight = true;

  Rng chan_rng = trial_rng.fork(11);
  Channel ch = sample_channel(geo, spec.mobile_geom, spec.ap_geom, spec.nlos_paths, chan_rng);

  LinkSystem sys;
  sys.mobile_geom = spec.mobile_geom;
  sys.ap_geom = spec.ap_geom;
  sys.channels = {{ch}};

  Rng cb_rng = trial_rng.fork(12);
  TrainingConfig cfg;
  cfg.repetitions = spec.repetitions;
  cfg.ap_tone_power_w = {spec.ap_tone_power_w};
  cfg.mobile_tone_power_w = spec.mobile_tone_power_w;
  cfg.noise_power_w = spec.noise_power_w;
  cfg.ack_threshold_snr = spec.ack_threshold_snr;
  cfg.fft_size = spec.fft_size;
  cfg.mobile_codebook = build_codebook(spec.mobile_codebook, spec.mobile_geom, spec.sweep_p,
                                       &cb_rng);
  cfg.ap_codebooks = {build_codebook(spec.ap_codebook, spec.ap_geom, spec.sweep_q, &cb_rng)};

  Rng ia_rng = trial_rng.fork(13);
  const InitialAccessResult ia = run_initial_access(sys, cfg, spec.estimator, ia_rng);

  LinkTrial out;
  out.acknowledged = ia.mobiles[0].acknowledged;
  out.achieved_snr = ia.mobiles[0].downlink_snr;
  out.degenerate = ia.mobiles[0].estimate.degenerate;
  const Eigen::MatrixXcd h = channel_matrix(ch, spec.mobile_geom, spec.ap_geom);
  out.bound_snr = spec.ap_tone_power_w *
                  best_grid_pair_gain(h, spec.mobile_geom, spec.ap_geom, spec.fft_size) /
                  spec.noise_power_w;
  return out;
}

std::vector<LinkTrial> run_link_ensemble(const LinkStudySpec& spec, std::uint64_t master_seed,
                                         const std::string& experiment, int trials,
                                         int threads) {
  if (trials < 1) throw std::invalid_argument("link study: trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("link study: threads must be >= 1");

  std::vector<LinkTrial> out(static_cast<std::size_t>(trials));
  std::mutex failure_mutex;
  std::exception_ptr failure;
  const auto work = [&](int start, int stride) {
    try {
      for (int t = start; t < trials; t += stride)
        out[static_cast<std::size_t>(t)] =
            run_link_trial(spec, Rng(trial_seed(master_seed, experiment,
                                                static_cast<std::uint64_t>(t))));
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(work, i, threads);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

OverheadStudyResult run_overhead_study(const OverheadSpec& spec, std::uint64_t master_seed,
                                       const std::string& experiment) {
  spec.net.validate();
  if (spec.sweep_sizes.empty()) throw std::invalid_argument("overhead study: no sweep sizes");
  if (spec.blockage_rates_hz.empty())
    throw std::invalid_argument("overhead study: no blockage rates");
  if (spec.frame_caps_s.empty()) throw std::invalid_argument("overhead study: no frame caps");
  if (spec.trials < 1) throw std::invalid_argument("overhead study: trials must be >= 1");
  if (spec.num_mobiles < 1) throw std::invalid_argument("overhead study: need mobiles");

  const double bandwidth = optimal_training_bandwidth(spec.t_switch_s, spec.tau_s);
  const double slot = slot_duration_s(bandwidth, spec.t_switch_s, spec.tau_s);
  const std::size_t num_aps = spec.net.ap_positions_m.size();
  const std::size_t num_sizes = spec.sweep_sizes.size();

  Rng cb_master(trial_seed(master_seed, experiment + "/codebooks", 0));
  std::vector<TrainingConfig> configs(num_sizes);
  for (std::size_t si = 0; si < num_sizes; ++si) {
    const int size = spec.sweep_sizes[si];
    Rng cb = cb_master.fork(static_cast<std::uint64_t>(size));
    TrainingConfig& tc = configs[si];
    tc.repetitions = spec.repetitions;
    tc.ap_tone_power_w.assign(num_aps, spec.ap_tone_power_w);
    tc.mobile_tone_power_w = spec.mobile_tone_power_w;
    tc.noise_power_w = spec.noise_power_w;
    tc.ack_threshold_snr = spec.ack_threshold_snr;
    tc.fft_size = spec.fft_size;
    tc.mobile_codebook = build_codebook(spec.codebook, spec.net.mobile_geom, size, &cb);
    tc.ap_codebooks.reserve(num_aps);
    for (std::size_t l = 0; l < num_aps; ++l)
      tc.ap_codebooks.push_back(build_codebook(spec.codebook, spec.net.ap_geom, size, &cb));
  }

  OverheadStudyResult result;
  result.points.resize(num_sizes);
  for (std::size_t si = 0; si < num_sizes; ++si) {
    result.points[si].sweep_size = spec.sweep_sizes[si];
    result.points[si].slots = training_slots(configs[si]);
    result.points[si].t_train_s = result.points[si].slots * slot;
  }

  for (int t = 0; t < spec.trials; ++t) {
    Rng trial(trial_seed(master_seed, experiment, static_cast<std::uint64_t>(t)));
    Rng place = trial.fork(0);
    Network net = spec.net;
    net.mobile_positions_m =
        scatter_positions(spec.placement_half_extent_m, spec.mobile_height_m, spec.num_mobiles,
                          net.blockers, place);
    Rng chan = trial.fork(1);
    const LinkSystem sys = build_link_system(net, spec.nlos_paths, chan);

    for (std::size_t si = 0; si < num_sizes; ++si) {
      Rng ia = trial.fork(100 + static_cast<std::uint64_t>(spec.sweep_sizes[si]));
      const InitialAccessResult round = run_initial_access(sys, configs[si], spec.estimator, ia);
      for (const MobileOutcome& out : round.mobiles) {
        if (out.scheduled) ++result.points[si].scheduled;
        if (out.acknowledged) ++result.points[si].acknowledged;
      }
    }
  }
  for (SweepOperatingPoint& p : result.points)
    p.success = (p.scheduled > 0)
                    ? static_cast<double>(p.acknowledged) / static_cast<double>(p.scheduled)
                    : 0.0;

  for (double rate : spec.blockage_rates_hz) {
    for (double cap : spec.frame_caps_s) {
      bool found = false;
      OverheadChoice best;
      for (const SweepOperatingPoint& p : result.points) {
        if (p.t_train_s >= cap) continue;
        const FrameChoice frame = choose_frame(rate, p.t_train_s, cap, p.success);
        if (!found || frame.utility > best.frame.utility) {
          best.blockage_rate_hz = rate;
          best.frame_cap_s = cap;
          best.point = p;
          best.frame = frame;
          found = true;
        }
      }
      if (!found)
        throw std::runtime_error("overhead study: no sweep size fits the frame cap");
      result.choices.push_back(best);
    }
  }
  return result;
}

CsvTable compare_codebooks_table(const SimulationConfig& cfg) {
  LinkStudySpec base = link_spec_from(cfg);
  base.estimator = estimator_from_name(cfg.codebook_study.estimator);

  CsvTable table;
  table.columns = {"codebook",      "sweep_size",          "omega",
                   "trials",        "acknowledged_fraction", "median_snr_db",
                   "median_bound_snr_db", "median_loss_db",  "is_optimum"};
  for (int size : cfg.codebook_study.sweep_sizes) {
    std::vector<std::pair<std::string, EnsembleStats>> group;
    for (const std::string& name : cfg.codebook_study.codebooks) {
      LinkStudySpec spec = base;
      spec.mobile_codebook = codebook_kind_from_name(name);
      spec.ap_codebook = spec.mobile_codebook;
      spec.sweep_p = size;
      spec.sweep_q = size;
      group.emplace_back(name, summarize(run_link_ensemble(spec, cfg.common.master_seed,
                                                           "codebooks", cfg.common.trials,
                                                           cfg.common.threads)));
    }
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(group.begin(), group.end(),
                         [](const auto& a, const auto& b) {
                           return a.second.median_snr_db < b.second.median_snr_db;
                         }) -
        group.begin());
    for (std::size_t i = 0; i < group.size(); ++i) {
      const auto& [name, stats] = group[i];
      table.add_row({name, std::to_string(size),
                     std::to_string(cfg.link.repetitions * size * size),
                     std::to_string(cfg.common.trials), csv_number(stats.acknowledged_fraction),
                     csv_number(stats.median_snr_db), csv_number(stats.median_bound_snr_db),
                     csv_number(stats.median_loss_db), (i == best) ? "1" : "0"});
    }
  }
  return table;
}

CsvTable compare_estimators_table(const SimulationConfig& cfg) {
  LinkStudySpec base = link_spec_from(cfg);
  base.mobile_codebook = codebook_kind_from_name(cfg.estimator_study.codebook);
  base.ap_codebook = base.mobile_codebook;

  CsvTable table;
  table.columns = {"estimator", "sweep_size",          "omega",         "trials",
                   "acknowledged_fraction", "median_snr_db", "median_bound_snr_db",
                   "median_loss_db"};
  for (int size : cfg.estimator_study.sweep_sizes) {
    for (const std::string& name : cfg.estimator_study.estimators) {
      LinkStudySpec spec = base;
      spec.estimator = estimator_from_name(name);
      spec.sweep_p = size;
      spec.sweep_q = size;
      const EnsembleStats stats = summarize(run_link_ensemble(
          spec, cfg.common.master_seed, "estimators", cfg.common.trials, cfg.common.threads));
      table.add_row({name, std::to_string(size),
                     std::to_string(cfg.link.repetitions * size * size),
                     std::to_string(cfg.common.trials), csv_number(stats.acknowledged_fraction),
                     csv_number(stats.median_snr_db), csv_number(stats.median_bound_snr_db),
                     csv_number(stats.median_loss_db)});
    }
  }
  return table;
}

CsvTable fft_size_table(const SimulationConfig& cfg) {
  LinkStudySpec base = link_spec_from(cfg);

  CsvTable table;
  table.columns = {"fft_size", "trials", "acknowledged_fraction", "median_snr_db",
                   "median_bound_snr_db", "median_loss_db"};
  for (int size : cfg.fft_study.fft_sizes) {
    LinkStudySpec spec = base;
    spec.fft_size = size;
    const EnsembleStats stats = summarize(run_link_ensemble(
        spec, cfg.common.master_seed, "fft-size", cfg.common.trials, cfg.common.threads));
    table.add_row({std::to_string(size), std::to_string(cfg.common.trials),
                   csv_number(stats.acknowledged_fraction), csv_number(stats.median_snr_db),
                   csv_number(stats.median_bound_snr_db), csv_number(stats.median_loss_db)});
  }
  return table;
}

CsvTable overhead_table(const SimulationConfig& cfg) {
  const ArrayGeometry ap_geom =
      make_geometry(cfg.arrays.ap_kind, cfg.arrays.ap_subarrays, cfg.arrays.ap_subarray_elements,
                    cfg.arrays.carrier_hz);
  const ArrayGeometry mobile_geom =
      make_geometry(cfg.arrays.mobile_kind, cfg.arrays.mobile_subarrays,
                    cfg.arrays.mobile_subarray_elements, cfg.arrays.carrier_hz);

  OverheadSpec spec;
  const OverheadStudyConfig& oc = cfg.overhead_study;
  spec.net = oc.topology_file.empty()
                 ? triangle_network(oc.triangle_side_m, oc.ap_height_m, ap_geom, mobile_geom)
                 : load_topology_file(oc.topology_file, ap_geom, mobile_geom);
  spec.num_mobiles = oc.num_mobiles;
  spec.mobile_height_m = oc.mobile_height_m;
  spec.placement_half_extent_m = oc.placement_half_extent_m;
  spec.sweep_sizes = oc.sweep_sizes;
  spec.blockage_rates_hz = oc.blockage_rates_hz;
  spec.frame_caps_s.clear();
  for (double ms : oc.frame_caps_ms) spec.frame_caps_s.push_back(ms * 1e-3);
  spec.t_switch_s = oc.t_switch_us * 1e-6;
  spec.tau_s = oc.tau_us * 1e-6;
  spec.codebook = codebook_kind_from_name(oc.codebook);
  spec.estimator = estimator_from_name(oc.estimator);
  spec.ap_tone_power_w = dbm_to_watts(cfg.link.ap_tone_power_dbm);
  spec.mobile_tone_power_w = dbm_to_watts(cfg.link.mobile_tone_power_dbm);
  spec.noise_power_w = noise_power_w(cfg.link.tone_bandwidth_hz, cfg.link.noise_figure_db);
  spec.ack_threshold_snr = db_to_linear(cfg.link.ack_threshold_db);
  spec.nlos_paths = cfg.link.nlos_paths;
  spec.fft_size = cfg.link.fft_size;
  spec.repetitions = cfg.link.repetitions;
  spec.trials = cfg.common.trials;

  const OverheadStudyResult res = run_overhead_study(spec, cfg.common.master_seed, "overhead");

  CsvTable table;
  table.columns = {"blockage_rate_hz", "frame_cap_ms",     "sweep_size",
                   "slots",            "t_train_ms",       "success_probability",
                   "t_frame_ms",       "expected_data_ms", "overhead_fraction",
                   "utility",          "is_optimum"};
  for (const OverheadChoice& choice : res.choices) {
    for (const SweepOperatingPoint& p : res.points) {
      if (p.t_train_s >= choice.frame_cap_s) continue;
      const FrameChoice frame =
          choose_frame(choice.blockage_rate_hz, p.t_train_s, choice.frame_cap_s, p.success);
      table.add_row({csv_number(choice.blockage_rate_hz), csv_number(choice.frame_cap_s * 1e3),
                     std::to_string(p.sweep_size), std::to_string(p.slots),
                     csv_number(p.t_train_s * 1e3), csv_number(p.success),
                     csv_number(frame.t_frame_s * 1e3), csv_number(frame.expected_data_s * 1e3),
                     csv_number(frame.overhead), csv_number(frame.utility),
                     (p.sweep_size == choice.point.sweep_size) ? "1" : "0"});
    }
  }
  return table;
}

CsvTable link_analysis_table(const SimulationConfig& cfg) {
  const ArrayGeometry ap_geom =
      make_geometry(cfg.arrays.ap_kind, cfg.arrays.ap_subarrays, cfg.arrays.ap_subarray_elements,
                    cfg.arrays.carrier_hz);
  const ArrayGeometry mobile_geom =
      make_geometry(cfg.arrays.mobile_kind, cfg.arrays.mobile_subarrays,
                    cfg.arrays.mobile_subarray_elements, cfg.arrays.carrier_hz);
  const double noise = noise_power_w(cfg.link.tone_bandwidth_hz, cfg.link.noise_figure_db);
  const double power = dbm_to_watts(cfg.link.ap_tone_power_dbm);
  const int size = cfg.link_analysis.sweep_size;
  const int pilots = cfg.link.repetitions * size * size;
  const double array_gain =
      static_cast<double>(ap_geom.total_elements()) * mobile_geom.total_elements();

  CsvTable table;
  table.columns = {"distance_m",     "path_loss_los_db",  "path_loss_nlos_db",
                   "element_snr_db", "beamformed_snr_db", "misalignment_probability"};
  for (double d : cfg.link_analysis.distances_m) {
    const double pl_los = path_loss_db(d, true, cfg.arrays.carrier_hz);
    const double pl_nlos = path_loss_db(d, false, cfg.arrays.carrier_hz);
    const double element_snr = power * db_to_linear(-pl_los) / noise;
    const double gamma_max = element_snr * array_gain;
    const double gamma_weak = gamma_max * db_to_linear(-cfg.link_analysis.weaker_path_gap_db);
    const double p_mis =
        misalignment_probability(gamma_max, gamma_weak, pilots,
                                 cfg.arrays.ap_subarray_elements,
                                 cfg.arrays.mobile_subarray_elements, cfg.arrays.ap_subarrays);
    table.add_row({csv_number(d), csv_number(pl_los), csv_number(pl_nlos),
                   csv_number(to_db_floored(element_snr)), csv_number(to_db_floored(gamma_max)),
                   csv_number(p_mis)});
  }
  return table;
}

}  // namespace beamacq
