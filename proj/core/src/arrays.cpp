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

#include "beamacq/arrays.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamacq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_phase(double phase) {
  double w = std::fmod(phase, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can return exactly 2*pi after the correction when phase is a
  // tiny negative number.
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double phase_distance(double a, double b) {
  const double d = std::abs(wrap_phase(a) - wrap_phase(b));
  return std::min(d, kTwoPi - d);
}

ArrayGeometry ArrayGeometry::ula(int num_subarrays, int subarray_elements, double carrier_hz) {
  ArrayGeometry g;
  g.kind = ArrayKind::ula;
  g.num_subarrays = num_subarrays;
  g.subarray_elements = subarray_elements;
  g.carrier_hz = carrier_hz;
  g.element_spacing_m = 0.5 * kSpeedOfLight / carrier_hz;
  g.subarray_spacing_m = subarray_elements * g.element_spacing_m;
  g.validate();
  return g;
}

ArrayGeometry ArrayGeometry::upa(int num_subarrays, int subarray_elements, double carrier_hz) {
  ArrayGeometry g;
  g.kind = ArrayKind::upa;
  g.num_subarrays = num_subarrays;
  g.subarray_elements = subarray_elements;
  g.carrier_hz = carrier_hz;
  g.element_spacing_m = 0.5 * kSpeedOfLight / carrier_hz;
  g.subarray_spacing_m = g.element_spacing_m;
  g.validate();
  return g;
}

void ArrayGeometry::validate() const {
  if (num_subarrays < 1) throw std::invalid_argument("array: num_subarrays must be >= 1");
  if (subarray_elements < 1) throw std::invalid_argument("array: subarray_elements must be >= 1");
  if (carrier_hz <= 0.0) throw std::invalid_argument("array: carrier must be positive");
  if (element_spacing_m <= 0.0) throw std::invalid_argument("array: element spacing must be positive");
  if (subarray_spacing_m <= 0.0) throw std::invalid_argument("array: sub-array spacing must be positive");
  if (element_spacing_m > subarray_spacing_m)
    throw std::invalid_argument("array: element spacing cannot exceed sub-array spacing");
}

Eigen::VectorXcd dft_vector(double phase, int len) {
  if (len < 1) throw std::invalid_argument("dft_vector: length must be >= 1");
  Eigen::VectorXcd v(len);
  const double scale = 1.0 / std::sqrt(static_cast<double>(len));
  for (int m = 0; m < len; ++m) v[m] = std::polar(scale, m * phase);
  return v;
}

PhasePair response_phases(const ArrayGeometry& geom, const Angle& angle) {
  geom.validate();
  const double k = kTwoPi * geom.carrier_hz / kSpeedOfLight;  // 2 pi / lambda
  PhasePair p;
  if (geom.kind == ArrayKind::ula) {
    const double s = std::sin(angle.azimuth_rad);
    p.subarray_phase = k * geom.subarray_spacing_m * s;
    p.element_phase = k * geom.element_spacing_m * s;
  } else {
    const double se = std::sin(angle.elevation_rad);
    p.subarray_phase = k * geom.subarray_spacing_m * se * std::sin(angle.azimuth_rad);
    p.element_phase = k * geom.element_spacing_m * se * std::cos(angle.azimuth_rad);
  }
  return p;
}

Eigen::VectorXcd response_from_phases(const ArrayGeometry& geom, const PhasePair& phases) {
  geom.validate();
  const int J = geom.num_subarrays;
  const int M = geom.subarray_elements;
  Eigen::VectorXcd v(J * M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(J * M));
  for (int j = 0; j < J; ++j)
    for (int m = 0; m < M; ++m)
      v[j * M + m] = std::polar(scale, j * phases.subarray_phase + m * phases.element_phase);
  return v;
}

Eigen::VectorXcd array_response(const ArrayGeometry& geom, const Angle& angle) {
  return response_from_phases(geom, response_phases(geom, angle));
}

Angle angle_from_phases(const ArrayGeometry& geom, const PhasePair& phases) {
  geom.validate();
  const double k = kTwoPi * geom.carrier_hz / kSpeedOfLight;
  // Phases live on [0, 2*pi); fold the upper half to negative sines.
  const auto centered = [](double phase) {
    const double w = wrap_phase(phase);
    return (w < std::numbers::pi) ? w : w - kTwoPi;
  };
  Angle a;
  if (geom.kind == ArrayKind::ula) {
    const double s = centered(phases.element_phase) / (k * geom.element_spacing_m);
    a.azimuth_rad = std::asin(std::clamp(s, -1.0, 1.0));
    a.elevation_rad = 0.0;
  } else {
    const double x = centered(phases.element_phase) / (k * geom.element_spacing_m);
    const double y = centered(phases.subarray_phase) / (k * geom.subarray_spacing_m);
    const double r = std::hypot(x, y);
    a.azimuth_rad = (r > 0.0) ? std::atan2(y, x) : 0.0;
    a.elevation_rad = std::asin(std::clamp(r, 0.0, 1.0));
  }
  return a;
}

Beam steering_beam_from_phases(const ArrayGeometry& geom, const PhasePair& phases, double power_w) {
  if (power_w < 0.0) throw std::invalid_argument("steering_beam: power must be >= 0");
  Beam b;
  b.weights = response_from_phases(geom, phases);
  b.active_elements = geom.total_elements();
  b.power_w = power_w;
  return b;
}

Beam steering_beam(const ArrayGeometry& geom, const Angle& angle, double power_w) {
  return steering_beam_from_phases(geom, response_phases(geom, angle), power_w);
}

}  // namespace beamacq
