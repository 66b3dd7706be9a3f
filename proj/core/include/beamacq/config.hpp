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

#include <cstdint>
#include <string>
#include <vector>

namespace beamacq {

// All study knobs, loaded from one JSON document with one object per
// section. Every key carries its unit as a suffix; unknown keys are
// rejected with their full path so typos cannot silently fall back to a
// default.

struct CommonConfig {
  std::uint64_t master_seed = 1;
  int trials = 200;
  int threads = 1;
};

struct ArraySectionConfig {
  double carrier_hz = 28e9;
  std::string ap_kind = "ula";
  std::string mobile_kind = "ula";
  int ap_subarrays = 2;
  int ap_subarray_elements = 16;
  int mobile_subarrays = 2;
  int mobile_subarray_elements = 8;
};

struct LinkSectionConfig {
  double tone_bandwidth_hz = 250e3;
  double noise_figure_db = 7.0;
  double ap_tone_power_dbm = 20.0;
  double mobile_tone_power_dbm = 20.0;
  double ack_threshold_db = 0.0;
  double distance_min_m = 15.0;
  double distance_max_m = 130.0;
  int nlos_paths = 3;
  int fft_size = 64;
  int repetitions = 1;
};

struct CodebookStudyConfig {
  std::vector<std::string> codebooks = {"full", "single-rf", "adaptive", "cross", "random"};
  std::string estimator = "ml";
  std::vector<int> sweep_sizes = {16};
};

struct EstimatorStudyConfig {
  std::vector<std::string> estimators = {"mp", "ml", "lml"};
  std::string codebook = "adaptive";
  std::vector<int> sweep_sizes = {8, 16, 32};
};

struct FftStudyConfig {
  std::vector<int> fft_sizes = {32, 64, 128, 256};
};

struct OverheadStudyConfig {
  std::string topology_file;  // empty selects the built-in triangle
  double triangle_side_m = 60.0;
  double ap_height_m = 6.0;
  double mobile_height_m = 1.5;
  double placement_half_extent_m = 45.0;
  int num_mobiles = 24;
  std::vector<double> blockage_rates_hz = {0.5, 2.0, 8.0};
  std::vector<double> frame_caps_ms = {20.0, 100.0};
  std::vector<int> sweep_sizes = {8, 12, 16, 24, 32};
  double t_switch_us = 4.0;
  double tau_us = 0.0;
  std::string estimator = "lml";
  std::string codebook = "adaptive";
};

struct LinkAnalysisConfig {
  std::vector<double> distances_m = {20, 40, 60, 80, 100, 120};
  int sweep_size = 16;
  double weaker_path_gap_db = 3.0;
};

struct SimulationConfig {
  CommonConfig common;
  ArraySectionConfig arrays;
  LinkSectionConfig link;
  CodebookStudyConfig codebook_study;
  EstimatorStudyConfig estimator_study;
  FftStudyConfig fft_study;
  OverheadStudyConfig overhead_study;
  LinkAnalysisConfig link_analysis;
};

// Parses a JSON document; absent sections and keys keep their defaults.
// Throws std::runtime_error naming the offending path on unknown keys,
// wrong types, or malformed JSON.
SimulationConfig parse_config(const std::string& json_text);
SimulationConfig load_config_file(const std::string& path);

// Canonical single-line JSON of the effective configuration, suitable for
// echoing into result files.
std::string config_echo(const SimulationConfig& cfg);

}  // namespace beamacq
