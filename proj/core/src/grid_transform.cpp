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

#include "beamacq/grid_transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "beamacq/fft.hpp"

namespace beamacq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reshape a stacked response-space vector into (element, sub-array) form:
// column j holds sub-array j's entries.
Eigen::MatrixXcd per_subarray(const Eigen::VectorXcd& v, int subarrays, int elements) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), elements, subarrays);
}
}  // namespace

ResponseGridTransform::ResponseGridTransform(const ArrayGeometry& geom, int fft_size)
    : geom_(geom), fft_size_(fft_size) {
  geom_.validate();
  if (fft_size < geom.total_elements())
    throw std::invalid_argument("grid transform: fft size must cover the array");
  if (geom_.kind == ArrayKind::upa) {
    if (fft_size < geom.subarray_elements || fft_size < geom.num_subarrays)
      throw std::invalid_argument("grid transform: fft size must cover both array axes");
    path_ = Path::plane;
    return;
  }
  const double r = geom_.spacing_ratio();
  const double rounded = std::round(r);
  if (std::abs(r - rounded) < 1e-9 && rounded >= 1.0) {
    ratio_ = static_cast<long long>(rounded);
    path_ = (ratio_ == geom_.subarray_elements || geom_.num_subarrays == 1)
                ? Path::fused_dft
                : Path::integer_ratio;
  } else {
    path_ = Path::direct;
  }
}

int ResponseGridTransform::grid_points() const {
  return planar() ? fft_size_ * fft_size_ : fft_size_;
}

Eigen::VectorXcd ResponseGridTransform::transform(const Eigen::VectorXcd& v) const {
  const int total = geom_.total_elements();
  if (v.size() != total) throw std::invalid_argument("grid transform: vector/array size mismatch");
  const int C = fft_size_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(total));

  switch (path_) {
    case Path::fused_dft:
      // Contiguous line: the response is one long DFT vector, so the grid
      // inner products are a single zero-padded forward FFT.
      return scale * fft::forward(v, C);

    case Path::integer_ratio: {
      // Element and sub-array phases share the grid up to the integer
      // ratio R: read the 2-D spectrum on the line (R*k mod C, k).
      const Eigen::MatrixXcd spec =
          fft::forward2d(per_subarray(v, geom_.num_subarrays, geom_.subarray_elements), C, C);
      Eigen::VectorXcd out(C);
      for (int k = 0; k < C; ++k)
        out[k] = scale * spec(k, static_cast<int>((ratio_ * k) % C));
      return out;
    }

    case Path::direct: {
      Eigen::VectorXcd out(C);
      for (int k = 0; k < C; ++k) {
        const PhasePair p = phases(k);
        std::complex<double> acc = 0.0;
        for (int j = 0; j < geom_.num_subarrays; ++j)
          for (int m = 0; m < geom_.subarray_elements; ++m)
            acc += v[j * geom_.subarray_elements + m] *
                   std::polar(1.0, -(j * p.subarray_phase + m * p.element_phase));
        out[k] = scale * acc;
      }
      return out;
    }

    case Path::plane: {
      const Eigen::MatrixXcd spec =
          fft::forward2d(per_subarray(v, geom_.num_subarrays, geom_.subarray_elements), C, C);
      // Flatten with the sub-array axis fastest: rows of the spectrum are
      // element bins, columns sub-array bins.
      Eigen::VectorXcd out(C * C);
      for (int ke = 0; ke < C; ++ke)
        for (int ks = 0; ks < C; ++ks) out[ke * C + ks] = scale * spec(ke, ks);
      return out;
    }
  }
  throw std::logic_error("unreachable transform path");
}

Eigen::VectorXcd ResponseGridTransform::transform_right(const Eigen::VectorXcd& row) const {
  return transform(row.conjugate()).conjugate();
}

PhasePair ResponseGridTransform::phases(int flat_index) const {
  if (flat_index < 0 || flat_index >= grid_points())
    throw std::invalid_argument("grid transform: index out of range");
  const int C = fft_size_;
  if (planar()) {
    const int ke = flat_index / C;
    const int ks = flat_index % C;
    return {kTwoPi * ks / C, kTwoPi * ke / C};
  }
  const double element = kTwoPi * flat_index / C;
  return {wrap_phase(geom_.spacing_ratio() * element), element};
}

std::vector<int> ResponseGridTransform::axis_indices(int flat_index) const {
  if (flat_index < 0 || flat_index >= grid_points())
    throw std::invalid_argument("grid transform: index out of range");
  if (planar()) return {flat_index / fft_size_, flat_index % fft_size_};
  return {flat_index};
}

std::vector<int> ResponseGridTransform::axis_sizes() const {
  if (planar()) return {fft_size_, fft_size_};
  return {fft_size_};
}

}  // namespace beamacq
