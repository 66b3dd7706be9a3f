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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "beamacq/config.hpp"
#include "beamacq/csv.hpp"
#include "beamacq/experiments.hpp"

namespace {

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json record;
  record["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << record.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beam acquisition studies for dense millimeter-wave networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int trials = 0;
  int threads = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "master seed override");
  auto* trials_opt =
      app.add_option("--trials", trials, "trial count override")->check(CLI::PositiveNumber);
  auto* threads_opt =
      app.add_option("--threads", threads, "worker thread override")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "output CSV path (stdout when omitted)");

  auto* codebooks_cmd = app.add_subcommand(
      "compare-codebooks", "score codebook families over a single-link ensemble");
  auto* estimators_cmd = app.add_subcommand(
      "compare-estimators", "score direction estimators over a single-link ensemble");
  auto* fft_cmd =
      app.add_subcommand("fft-size", "sweep the search-grid size over a single-link ensemble");
  auto* overhead_cmd = app.add_subcommand(
      "optimize-overhead", "pick sweep sizes and frame lengths for a campus deployment");
  auto* link_cmd =
      app.add_subcommand("link-analysis", "closed-form link budget across distances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  beamacq::SimulationConfig cfg;
  try {
    if (!config_path.empty()) cfg = beamacq::load_config_file(config_path);
    if (seed_opt->count() > 0) cfg.common.master_seed = seed;
    if (trials_opt->count() > 0) cfg.common.trials = trials;
    if (threads_opt->count() > 0) cfg.common.threads = threads;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return 2;
  }

  try {
    beamacq::CsvTable table;
    if (codebooks_cmd->parsed()) table = beamacq::compare_codebooks_table(cfg);
    if (estimators_cmd->parsed()) table = beamacq::compare_estimators_table(cfg);
    if (fft_cmd->parsed()) table = beamacq::fft_size_table(cfg);
    if (overhead_cmd->parsed()) table = beamacq::overhead_table(cfg);
    if (link_cmd->parsed()) table = beamacq::link_analysis_table(cfg);

    const std::string comment = "config: " + beamacq::config_echo(cfg);
    if (out_path.empty())
      beamacq::write_csv(std::cout, table, comment);
    else
      beamacq::write_csv_file(out_path, table, comment);
  } catch (const std::exception& e) {
    emit_error("runtime", e.what());
    return 1;
  }
  return 0;
}
