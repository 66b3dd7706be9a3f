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

#include "beamacq/codebooks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamacq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit-modulus DFT beam over the first `active` of `total` antennas.
Eigen::VectorXcd prefix_dft_beam(double phase, int active, int total) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(total);
  w.head(active) = dft_vector(phase, active);
  return w;
}
}  // namespace

CodebookKind codebook_kind_from_name(const std::string& name) {
  if (name == "full") return CodebookKind::full_sweep;
  if (name == "single-rf") return CodebookKind::single_rf;
  if (name == "adaptive") return CodebookKind::adaptive;
  if (name == "cross") return CodebookKind::cross;
  if (name == "random") return CodebookKind::random_phase;
  throw std::invalid_argument("unknown codebook kind: " + name);
}

std::string codebook_kind_name(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::full_sweep: return "full";
    case CodebookKind::single_rf: return "single-rf";
    case CodebookKind::adaptive: return "adaptive";
    case CodebookKind::cross: return "cross";
    case CodebookKind::random_phase: return "random";
  }
  throw std::logic_error("unreachable codebook kind");
}

Beam Codebook::beam(int index, double power_w) const {
  if (index < 0 || index >= size()) throw std::invalid_argument("codebook: beam index out of range");
  Beam b;
  b.weights = weights.col(index);
  b.active_elements = active_elements;
  b.power_w = power_w;
  return b;
}

Codebook build_codebook(CodebookKind kind, const ArrayGeometry& geom, int size, Rng* rng) {
  geom.validate();
  if (size < 1) throw std::invalid_argument("codebook: size must be >= 1");
  const int total = geom.total_elements();
  const double ratio = geom.spacing_ratio();

  Codebook cb;
  cb.kind = kind;
  cb.array_kind = geom.kind;
  cb.weights.resize(total, size);

  // A beam's steer phase pair fixes the full-array direction it points at;
  // for a ULA the sub-array phase rides along at ratio * element phase.
  const auto ula_pair = [&](double element_phase) {
    return PhasePair{wrap_phase(ratio * element_phase), wrap_phase(element_phase)};
  };

  switch (kind) {
    case CodebookKind::full_sweep: {
      if (geom.kind == ArrayKind::upa) {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
        if (side * side != size)
          throw std::invalid_argument("codebook: UPA full sweep size must be a perfect square");
        return build_upa_sweep(geom, side, side);
      }
      cb.active_elements = total;
      for (int i = 0; i < size; ++i) {
        const double phase = kTwoPi * i / size;
        cb.weights.col(i) = dft_vector(phase, total);
        cb.steer_phases.push_back(ula_pair(phase));
      }
      cb.uniform_response_energy = size >= total;
      break;
    }
    case CodebookKind::single_rf: {
      const int active = geom.subarray_elements;
      cb.active_elements = active;
      for (int i = 0; i < size; ++i) {
        const double phase = kTwoPi * i / size;
        cb.weights.col(i) = prefix_dft_beam(phase, active, total);
        if (geom.kind == ArrayKind::ula)
          cb.steer_phases.push_back(ula_pair(phase));
        else
          cb.steer_phases.push_back(PhasePair{0.0, wrap_phase(phase)});
      }
      cb.uniform_response_energy = size >= active;
      break;
    }
    case CodebookKind::adaptive: {
      if (geom.kind == ArrayKind::upa)
        throw std::invalid_argument("codebook: adaptive sweep is defined for line arrays");
      const int active = std::min(size, total);
      cb.active_elements = active;
      for (int i = 0; i < size; ++i) {
        const double phase = kTwoPi * i / size;
        cb.weights.col(i) = prefix_dft_beam(phase, active, total);
        cb.steer_phases.push_back(ula_pair(phase));
      }
      cb.uniform_response_energy = true;  // active <= size by construction
      break;
    }
    case CodebookKind::cross: {
      if (geom.kind == ArrayKind::upa)
        throw std::invalid_argument("codebook: cross sweep is defined for line arrays");
      if (total % 2 != 0) throw std::invalid_argument("codebook: cross sweep needs an even array");
      if (size % 2 != 0) throw std::invalid_argument("codebook: cross sweep needs an even size");
      const int half = total / 2;
      cb.active_elements = total;
      for (int i = 0; i < size; ++i) {
        // The two halves point at grid phases half a sweep apart, so each
        // beam covers two directions per slot.
        const double phase_a = kTwoPi * i / size;
        const double phase_b = kTwoPi * ((i + size / 2) % size) / size;
        Eigen::VectorXcd w(total);
        w.head(half) = dft_vector(phase_a, half) / std::sqrt(2.0);
        w.tail(half) = dft_vector(phase_b, half) / std::sqrt(2.0);
        cb.weights.col(i) = w;
        cb.steer_phases.push_back(ula_pair(phase_a));
      }
      cb.uniform_response_energy = false;  // computed exactly by the estimators
      break;
    }
    case CodebookKind::random_phase: {
      if (rng == nullptr)
        throw std::invalid_argument("codebook: random sweep needs a random stream");
      cb.active_elements = total;
      const double scale = 1.0 / std::sqrt(static_cast<double>(total));
      for (int i = 0; i < size; ++i)
        for (int m = 0; m < total; ++m)
          cb.weights(m, i) = std::polar(scale, rng->uniform(0.0, kTwoPi));
      cb.uniform_response_energy = false;
      break;
    }
  }
  return cb;
}

Codebook build_upa_sweep(const ArrayGeometry& geom, int subarray_bins, int element_bins) {
  geom.validate();
  if (geom.kind != ArrayKind::upa)
    throw std::invalid_argument("codebook: phase-grid sweep is for planar arrays");
  if (subarray_bins < 1 || element_bins < 1)
    throw std::invalid_argument("codebook: sweep bins must be >= 1");
  const int total = geom.total_elements();
  Codebook cb;
  cb.kind = CodebookKind::full_sweep;
  cb.array_kind = ArrayKind::upa;
  cb.active_elements = total;
  cb.weights.resize(total, subarray_bins * element_bins);
  int col = 0;
  for (int i = 0; i < subarray_bins; ++i) {
    for (int k = 0; k < element_bins; ++k, ++col) {
      const PhasePair p{kTwoPi * i / subarray_bins, kTwoPi * k / element_bins};
      cb.weights.col(col) = response_from_phases(geom, p);
      cb.steer_phases.push_back(p);
    }
  }
  cb.uniform_response_energy =
      subarray_bins >= geom.num_subarrays && element_bins >= geom.subarray_elements;
  return cb;
}

Eigen::VectorXd beam_pattern(const Beam& beam, const ArrayGeometry& geom,
                             const std::vector<Angle>& grid) {
  if (beam.weights.size() != geom.total_elements())
    throw std::invalid_argument("beam_pattern: beam does not match geometry");
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = std::abs(beam.weights.dot(array_response(geom, grid[i])));
  return out;
}

}  // namespace beamacq
