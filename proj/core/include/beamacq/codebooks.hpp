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
#include <string>
#include <vector>

#include "beamacq/arrays.hpp"
#include "beamacq/rng.hpp"

namespace beamacq {

enum class CodebookKind {
  full_sweep,  // DFT beams over all antennas
  single_rf,   // DFT beams on the first sub-array, other chains dark
  adaptive,    // DFT beams on the first min(size, antennas) antennas
  cross,       // antenna halves split across two orthogonal directions
  random_phase,  // i.i.d. uniform phases, all antennas
};

CodebookKind codebook_kind_from_name(const std::string& name);  // "full", "single-rf", ...
std::string codebook_kind_name(CodebookKind kind);

// Sweep codebook: one unit-norm column per beam. All beams of a codebook
// activate the same antenna count; inactive antennas carry exact zeros, so
// every beam splits its power equally over active_elements antennas.
struct Codebook {
  CodebookKind kind = CodebookKind::full_sweep;
  ArrayKind array_kind = ArrayKind::ula;
  int active_elements = 0;
  // True when sum_b |w_b^H u|^2 is the same for every direction u, which
  // lets the estimators treat their statistic denominator as a constant.
  // Holds for uniform DFT sweeps whose beam count covers the active
  // aperture.
  bool uniform_response_energy = false;
  // Pointing phases per beam; directional kinds only (empty for
  // random_phase, where "the beam's direction" has no meaning).
  std::vector<PhasePair> steer_phases;
  Eigen::MatrixXcd weights;  // total_elements x size

  int size() const { return static_cast<int>(weights.cols()); }
  bool directional() const { return !steer_phases.empty(); }

  Beam beam(int index, double power_w = 1.0) const;
};

// Builds a sweep of `size` beams for the geometry. rng is consumed only by
// random_phase. Throws std::invalid_argument for size < 1, for UPA
// geometries with kinds that are line-specific (adaptive, cross), and for
// cross sweeps whose size or half-aperture is odd.
Codebook build_codebook(CodebookKind kind, const ArrayGeometry& geom, int size, Rng* rng = nullptr);

// Full UPA sweep on an explicit phase grid, subarray_bins x element_bins
// beams ordered element-bin-fastest.
Codebook build_upa_sweep(const ArrayGeometry& geom, int subarray_bins, int element_bins);

// |<beam weights, response(angle)>| per grid angle; a plotting helper.
Eigen::VectorXd beam_pattern(const Beam& beam, const ArrayGeometry& geom,
                             const std::vector<Angle>& grid);

}  // namespace beamacq
