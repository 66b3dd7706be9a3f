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

#include "beamacq/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace beamacq {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw std::runtime_error("config: " + path + ": " + what);
}

// One JSON object with typed, unit-suffixed keys. Every read marks its
// key; finish() rejects whatever was never asked for.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) config_error(path_, "must be an object");
  }

  void number(const char* key, double* out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) config_error(at(key), "must be a number");
      *out = v->get<double>();
    }
  }

  void integer(const char* key, int* out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) config_error(at(key), "must be an integer");
      *out = v->get<int>();
    }
  }

  void seed(const char* key, std::uint64_t* out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) config_error(at(key), "must be a non-negative integer");
      *out = v->get<std::uint64_t>();
    }
  }

  void text(const char* key, std::string* out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) config_error(at(key), "must be a string");
      *out = v->get<std::string>();
    }
  }

  void number_list(const char* key, std::vector<double>* out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) config_error(at(key), "must be an array of numbers");
      out->clear();
      for (const json& e : *v) {
        if (!e.is_number()) config_error(at(key), "must be an array of numbers");
        out->push_back(e.get<double>());
      }
    }
  }

  void integer_list(const char* key, std::vector<int>* out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) config_error(at(key), "must be an array of integers");
      out->clear();
      for (const json& e : *v) {
        if (!e.is_number_integer()) config_error(at(key), "must be an array of integers");
        out->push_back(e.get<int>());
      }
    }
  }

  void text_list(const char* key, std::vector<std::string>* out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) config_error(at(key), "must be an array of strings");
      out->clear();
      for (const json& e : *v) {
        if (!e.is_string()) config_error(at(key), "must be an array of strings");
        out->push_back(e.get<std::string>());
      }
    }
  }

  void finish() const {
    for (const auto& item : obj_.items())
      if (!consumed_.contains(item.key())) config_error(at(item.key().c_str()), "unknown key");
  }

 private:
  const json* take(const char* key) {
    consumed_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string at(const char* key) const { return path_ + "." + key; }

  const json& obj_;
  std::string path_;
  std::set<std::string> consumed_;
};

void parse_common(const json& j, CommonConfig* out) {
  Section s(j, "common");
  s.seed("master_seed", &out->master_seed);
  s.integer("trials", &out->trials);
  s.integer("threads", &out->threads);
  s.finish();
  if (out->trials < 1) config_error("common.trials", "must be >= 1");
  if (out->threads < 1) config_error("common.threads", "must be >= 1");
}

void parse_arrays(const json& j, ArraySectionConfig* out) {
  Section s(j, "arrays");
  s.number("carrier_hz", &out->carrier_hz);
  s.text("ap_kind", &out->ap_kind);
  s.text("mobile_kind", &out->mobile_kind);
  s.integer("ap_subarrays", &out->ap_subarrays);
  s.integer("ap_subarray_elements", &out->ap_subarray_elements);
  s.integer("mobile_subarrays", &out->mobile_subarrays);
  s.integer("mobile_subarray_elements", &out->mobile_subarray_elements);
  s.finish();
}

void parse_link(const json& j, LinkSectionConfig* out) {
  Section s(j, "link");
  s.number("tone_bandwidth_hz", &out->tone_bandwidth_hz);
  s.number("noise_figure_db", &out->noise_figure_db);
  s.number("ap_tone_power_dbm", &out->ap_tone_power_dbm);
  s.number("mobile_tone_power_dbm", &out->mobile_tone_power_dbm);
  s.number("ack_threshold_db", &out->ack_threshold_db);
  s.number("distance_min_m", &out->distance_min_m);
  s.number("distance_max_m", &out->distance_max_m);
  s.integer("nlos_paths", &out->nlos_paths);
  s.integer("fft_size", &out->fft_size);
  s.integer("repetitions", &out->repetitions);
  s.finish();
}

void parse_codebook_study(const json& j, CodebookStudyConfig* out) {
  Section s(j, "compare_codebooks");
  s.text_list("codebooks", &out->codebooks);
  s.text("estimator", &out->estimator);
  s.integer_list("sweep_sizes", &out->sweep_sizes);
  s.finish();
}

void parse_estimator_study(const json& j, EstimatorStudyConfig* out) {
  Section s(j, "compare_estimators");
  s.text_list("estimators", &out->estimators);
  s.text("codebook", &out->codebook);
  s.integer_list("sweep_sizes", &out->sweep_sizes);
  s.finish();
}

void parse_fft_study(const json& j, FftStudyConfig* out) {
  Section s(j, "fft_size");
  s.integer_list("fft_sizes", &out->fft_sizes);
  s.finish();
}

void parse_overhead_study(const json& j, OverheadStudyConfig* out) {
  Section s(j, "overhead");
  s.text("topology_file", &out->topology_file);
  s.number("triangle_side_m", &out->triangle_side_m);
  s.number("ap_height_m", &out->ap_height_m);
  s.number("mobile_height_m", &out->mobile_height_m);
  s.number("placement_half_extent_m", &out->placement_half_extent_m);
  s.integer("num_mobiles", &out->num_mobiles);
  s.number_list("blockage_rates_hz", &out->blockage_rates_hz);
  s.number_list("frame_caps_ms", &out->frame_caps_ms);
  s.integer_list("sweep_sizes", &out->sweep_sizes);
  s.number("t_switch_us", &out->t_switch_us);
  s.number("tau_us", &out->tau_us);
  s.text("estimator", &out->estimator);
  s.text("codebook", &out->codebook);
  s.finish();
}

void parse_link_analysis(const json& j, LinkAnalysisConfig* out) {
  Section s(j, "link_analysis");
  s.number_list("distances_m", &out->distances_m);
  s.integer("sweep_size", &out->sweep_size);
  s.number("weaker_path_gap_db", &out->weaker_path_gap_db);
  s.finish();
}

json echo_json(const SimulationConfig& c) {
  json j;
  j["common"] = {{"master_seed", c.common.master_seed},
                 {"trials", c.common.trials},
                 {"threads", c.common.threads}};
  j["arrays"] = {{"carrier_hz", c.arrays.carrier_hz},
                 {"ap_kind", c.arrays.ap_kind},
                 {"mobile_kind", c.arrays.mobile_kind},
                 {"ap_subarrays", c.arrays.ap_subarrays},
                 {"ap_subarray_elements", c.arrays.ap_subarray_elements},
                 {"mobile_subarrays", c.arrays.mobile_subarrays},
                 {"mobile_subarray_elements", c.arrays.mobile_subarray_elements}};
  j["link"] = {{"tone_bandwidth_hz", c.link.tone_bandwidth_hz},
               {"noise_figure_db", c.link.noise_figure_db},
               {"ap_tone_power_dbm", c.link.ap_tone_power_dbm},
               {"mobile_tone_power_dbm", c.link.mobile_tone_power_dbm},
               {"ack_threshold_db", c.link.ack_threshold_db},
               {"distance_min_m", c.link.distance_min_m},
               {"distance_max_m", c.link.distance_max_m},
               {"nlos_paths", c.link.nlos_paths},
               {"fft_size", c.link.fft_size},
               {"repetitions", c.link.repetitions}};
  j["compare_codebooks"] = {{"codebooks", c.codebook_study.codebooks},
                            {"estimator", c.codebook_study.estimator},
                            {"sweep_sizes", c.codebook_study.sweep_sizes}};
  j["compare_estimators"] = {{"estimators", c.estimator_study.estimators},
                             {"codebook", c.estimator_study.codebook},
                             {"sweep_sizes", c.estimator_study.sweep_sizes}};
  j["fft_size"] = {{"fft_sizes", c.fft_study.fft_sizes}};
  j["overhead"] = {{"topology_file", c.overhead_study.topology_file},
                   {"triangle_side_m", c.overhead_study.triangle_side_m},
                   {"ap_height_m", c.overhead_study.ap_height_m},
                   {"mobile_height_m", c.overhead_study.mobile_height_m},
                   {"placement_half_extent_m", c.overhead_study.placement_half_extent_m},
                   {"num_mobiles", c.overhead_study.num_mobiles},
                   {"blockage_rates_hz", c.overhead_study.blockage_rates_hz},
                   {"frame_caps_ms", c.overhead_study.frame_caps_ms},
                   {"sweep_sizes", c.overhead_study.sweep_sizes},
                   {"t_switch_us", c.overhead_study.t_switch_us},
                   {"tau_us", c.overhead_study.tau_us},
                   {"estimator", c.overhead_study.estimator},
                   {"codebook", c.overhead_study.codebook}};
  j["link_analysis"] = {{"distances_m", c.link_analysis.distances_m},
                        {"sweep_size", c.link_analysis.sweep_size},
                        {"weaker_path_gap_db", c.link_analysis.weaker_path_gap_db}};
  return j;
}

}  // namespace

SimulationConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::runtime_error("config: document must be a JSON object");

  SimulationConfig cfg;
  const std::set<std::string> known = {"common",           "arrays",   "link",
                                       "compare_codebooks", "compare_estimators",
                                       "fft_size",          "overhead", "link_analysis"};
  for (const auto& item : root.items())
    if (!known.contains(item.key()))
      throw std::runtime_error("config: " + item.key() + ": unknown section");

  if (root.contains("common")) parse_common(root["common"], &cfg.common);
  if (root.contains("arrays")) parse_arrays(root["arrays"], &cfg.arrays);
  if (root.contains("link")) parse_link(root["link"], &cfg.link);
  if (root.contains("compare_codebooks"))
    parse_codebook_study(root["compare_codebooks"], &cfg.codebook_study);
  if (root.contains("compare_estimators"))
    parse_estimator_study(root["compare_estimators"], &cfg.estimator_study);
  if (root.contains("fft_size")) parse_fft_study(root["fft_size"], &cfg.fft_study);
  if (root.contains("overhead")) parse_overhead_study(root["overhead"], &cfg.overhead_study);
  if (root.contains("link_analysis"))
    parse_link_analysis(root["link_analysis"], &cfg.link_analysis);
  return cfg;
}

SimulationConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_echo(const SimulationConfig& cfg) { return echo_json(cfg).dump(); }

}  // namespace beamacq
