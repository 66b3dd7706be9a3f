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
#include <complex>

namespace beamacq {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

enum class ArrayKind { ula, upa };

// Antenna panel made of J identically-sized sub-arrays, one RF chain per
// sub-array. A ULA lays the sub-arrays along one line; a UPA stacks them
// as rows of a planar grid.
struct ArrayGeometry {
  ArrayKind kind = ArrayKind::ula;
  int num_subarrays = 1;        // J
  int subarray_elements = 1;    // elements per sub-array
  double element_spacing_m = 0.0;   // d, within a sub-array
  double subarray_spacing_m = 0.0;  // u, first element to first element
  double carrier_hz = 0.0;

  int total_elements() const { return num_subarrays * subarray_elements; }
  double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
  // u/d; an integer ratio embeds the sub-array phase grid in the element
  // phase grid, which the estimator transforms rely on.
  double spacing_ratio() const { return subarray_spacing_m / element_spacing_m; }

  // Contiguous half-wavelength line: d = lambda/2, u = M*d, so the full
  // response collapses to a single J*M-point DFT vector.
  static ArrayGeometry ula(int num_subarrays, int subarray_elements, double carrier_hz);
  // Planar grid of J rows: d = u = lambda/2.
  static ArrayGeometry upa(int num_subarrays, int subarray_elements, double carrier_hz);

  // Throws std::invalid_argument on nonpositive sizes, nonpositive
  // spacings, d > u, or nonpositive carrier.
  void validate() const;
};

// Physical direction. For a ULA only the azimuth matters and directions
// theta and pi - theta produce the same response. For a UPA, azimuth is
// the angle in the array plane and elevation in [0, pi/2] tilts out of it.
struct Angle {
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
};

// Electrical phases of a response: e(subarray_phase; J) kron
// e(element_phase; M). This is the native coordinate of every estimator
// grid; physical angles map many-to-one onto it.
struct PhasePair {
  double subarray_phase = 0.0;  // J-axis increment per sub-array
  double element_phase = 0.0;   // M-axis increment per element
};

// sqrt(1/len) * [1, e^{i phase}, ..., e^{i (len-1) phase}]
Eigen::VectorXcd dft_vector(double phase, int len);

// Electrical phases for a physical direction under the given geometry.
PhasePair response_phases(const ArrayGeometry& geom, const Angle& angle);

// Unit-norm array response e(phi1; J) kron e(phi2; M).
Eigen::VectorXcd response_from_phases(const ArrayGeometry& geom, const PhasePair& phases);
Eigen::VectorXcd array_response(const ArrayGeometry& geom, const Angle& angle);

// Nearest physical direction for an electrical phase pair: inverts the
// element-axis phase, clamping sin to [-1, 1] (phases outside the visible
// region have no physical preimage). ULA ignores the sub-array phase; UPA
// recovers azimuth and elevation from both.
Angle angle_from_phases(const ArrayGeometry& geom, const PhasePair& phases);

// Analog beam: unit-norm weights over the whole panel; antennas past
// active_elements carry exact zeros. power_w is the transmit power the
// beam is driven with (1.0 for pure combining weights).
struct Beam {
  Eigen::VectorXcd weights;
  int active_elements = 0;
  double power_w = 1.0;
};

// Matched steering across all antennas toward the given direction: the
// weights equal the array response, so combining w^H u(theta) peaks there.
Beam steering_beam(const ArrayGeometry& geom, const Angle& angle, double power_w);
Beam steering_beam_from_phases(const ArrayGeometry& geom, const PhasePair& phases, double power_w);

double wrap_phase(double phase);  // into [0, 2*pi)
// Shortest circular distance between two phases, in [0, pi].
double phase_distance(double a, double b);

}  // namespace beamacq
