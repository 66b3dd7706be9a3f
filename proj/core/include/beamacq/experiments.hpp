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
#include <cstdint>
#include <string>
#include <vector>

#include "beamacq/arrays.hpp"
#include "beamacq/codebooks.hpp"
#include "beamacq/config.hpp"
#include "beamacq/csv.hpp"
#include "beamacq/estimators.hpp"
#include "beamacq/overhead.hpp"
#include "beamacq/rng.hpp"
#include "beamacq/scenario.hpp"
#include "beamacq/signaling.hpp"

namespace beamacq {

ArrayGeometry make_geometry(const std::string& kind, int subarrays, int subarray_elements,
                            double carrier_hz);

// Single-AP, single-mobile acquisition ensemble. Each trial drops the AP
// at a uniform distance and bearing, draws one channel, runs a full
// acquisition round, and scores the resulting link against the best beam
// pair available on the search grid at the same power budget.
struct LinkStudySpec {
  ArrayGeometry ap_geom;
  ArrayGeometry mobile_geom;
  CodebookKind ap_codebook = CodebookKind::adaptive;
  CodebookKind mobile_codebook = CodebookKind::adaptive;
  EstimatorKind estimator = EstimatorKind::ml;
  int sweep_p = 16;
  int sweep_q = 16;
  int repetitions = 1;
  int fft_size = 64;
  double ap_tone_power_w = 0.1;
  double mobile_tone_power_w = 0.1;
  double noise_power_w = 1e-14;
  double ack_threshold_snr = 1.0;
  double distance_min_m = 15.0;
  double distance_max_m = 130.0;
  int nlos_paths = 3;
};

struct LinkTrial {
  double achieved_snr = 0.0;  // linear; 0 when the handshake failed
  double bound_snr = 0.0;     // best grid beam pair on the same channel
  bool acknowledged = false;
  bool degenerate = false;
};

// max |u^H h a|^2 over the response grids on both sides.
double best_grid_pair_gain(const Eigen::MatrixXcd& h, const ArrayGeometry& mobile,
                           const ArrayGeometry& ap, int fft_size);

LinkTrial run_link_trial(const LinkStudySpec& spec, Rng trial_rng);

// Trials are seeded from (master_seed, experiment, trial index) alone, so
// results are reproducible for any thread count, and two ensembles sharing
// those inputs see identical channels and noise even when their codebooks
// or estimators differ.
std::vector<LinkTrial> run_link_ensemble(const LinkStudySpec& spec, std::uint64_t master_seed,
                                         const std::string& experiment, int trials,
                                         int threads = 1);

// Campus overhead study: measures acquisition success per sweep size by
// Monte Carlo over mobile drops, then picks the sweep size maximizing
// success-weighted usable frame fraction for every blockage rate and
// frame-length cap.
struct OverheadSpec {
  Network net;  // mobile positions are redrawn every trial
  int num_mobiles = 24;
  double mobile_height_m = 1.5;
  double placement_half_extent_m = 45.0;
  std::vector<int> sweep_sizes = {8, 12, 16, 24, 32};
  std::vector<double> blockage_rates_hz = {0.5, 2.0, 8.0};
  std::vector<double> frame_caps_s = {0.02, 0.1};
  double t_switch_s = 4e-6;
  double tau_s = 0.0;
  CodebookKind codebook = CodebookKind::adaptive;
  EstimatorKind estimator = EstimatorKind::lml;
  double ap_tone_power_w = 1e-3;
  double mobile_tone_power_w = 1e-3;
  double noise_power_w = 1e-14;
  double ack_threshold_snr = 1.0;
  int nlos_paths = 3;
  int fft_size = 64;
  int repetitions = 1;
  int trials = 40;
};

struct SweepOperatingPoint {
  int sweep_size = 0;
  int slots = 0;
  double t_train_s = 0.0;
  int scheduled = 0;     // totals across trials
  int acknowledged = 0;
  double success = 0.0;  // acknowledged / scheduled
};

struct OverheadChoice {
  double blockage_rate_hz = 0.0;
  double frame_cap_s = 0.0;
  SweepOperatingPoint point;
  FrameChoice frame;
};

struct OverheadStudyResult {
  std::vector<SweepOperatingPoint> points;  // one per sweep size
  std::vector<OverheadChoice> choices;      // rate-major, cap-minor
};

OverheadStudyResult run_overhead_study(const OverheadSpec& spec, std::uint64_t master_seed,
                                       const std::string& experiment);

// Result tables for the command-line tool.
CsvTable compare_codebooks_table(const SimulationConfig& cfg);
CsvTable compare_estimators_table(const SimulationConfig& cfg);
CsvTable fft_size_table(const SimulationConfig& cfg);
CsvTable overhead_table(const SimulationConfig& cfg);
CsvTable link_analysis_table(const SimulationConfig& cfg);

}  // namespace beamacq
