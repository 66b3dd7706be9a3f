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
#include <vector>

#include "beamacq/arrays.hpp"

namespace beamacq {

// Evaluates t[g] = u(g)^H v for every point g of a uniform sin-space grid,
// where u(g) is the array response of `geom` at the grid's electrical
// phases. All angle searches in the estimators run through this.
//
// Grids:
//  - ULA: one axis of C element phases 2*pi*k/C; the sub-array phase is
//    slaved to ratio * element phase. When u = M*d the response is one
//    long DFT vector and a single zero-padded C-point FFT evaluates the
//    whole grid. Any other integer spacing ratio R goes through a C x C
//    2-D FFT of the per-sub-array reshape, reading bin (R*k mod C, k).
//    Non-integer ratios fall back to direct evaluation.
//  - UPA: the full C x C grid over (sub-array phase, element phase) via
//    one 2-D FFT.
//
// Plane grids flatten with the sub-array axis fastest:
// flat = element_bin * C + subarray_bin.
class ResponseGridTransform {
 public:
  ResponseGridTransform(const ArrayGeometry& geom, int fft_size);

  int fft_size() const { return fft_size_; }
  bool planar() const { return geom_.kind == ArrayKind::upa; }
  // Number of grid points: C for a line grid, C*C for a plane grid.
  int grid_points() const;
  const ArrayGeometry& geometry() const { return geom_; }

  // u(g)^H v over the grid, flattened. v has total_elements entries.
  Eigen::VectorXcd transform(const Eigen::VectorXcd& v) const;

  // sum_n row[n] * u_component... evaluates r[g] = row^T u(g) (the
  // transpose pairing that appears on the departure side of the ML
  // statistic); equals conj(transform(conj(row))).
  Eigen::VectorXcd transform_right(const Eigen::VectorXcd& row) const;

  // Electrical phases of a flat grid index.
  PhasePair phases(int flat_index) const;
  // Grid indices per axis of a flat index ({k} line, {element_bin,
  // subarray_bin} plane).
  std::vector<int> axis_indices(int flat_index) const;
  std::vector<int> axis_sizes() const;

 private:
  enum class Path { fused_dft, integer_ratio, direct, plane };

  ArrayGeometry geom_;
  int fft_size_ = 0;
  Path path_ = Path::direct;
  long long ratio_ = 0;  // integer spacing ratio when applicable
};

}  // namespace beamacq
