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

#include "beamacq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace beamacq::fft {

namespace {

// FFTW plan creation and destruction are not thread-safe; executing a plan
// on fresh buffers is. Plans are cached per shape, created once under a
// lock, and kept for the process lifetime.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n0, int n1) {
    const auto key = std::make_pair(n0, n1);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const std::size_t total = static_cast<std::size_t>(n0) * (n1 > 0 ? n1 : 1);
    fftw_complex* in = fftw_alloc_complex(total);
    fftw_complex* out = fftw_alloc_complex(total);
    fftw_plan plan = (n1 > 0)
        ? fftw_plan_dft_2d(n0, n1, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_1d(n0, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Eigen::VectorXcd forward(const Eigen::VectorXcd& x, int n) {
  if (n <= 0) throw std::invalid_argument("fft size must be positive");
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(n);
  const int copy = static_cast<int>(std::min<Eigen::Index>(x.size(), n));
  in.head(copy) = x.head(copy);
  Eigen::VectorXcd out(n);
  fftw_execute_dft(PlanCache::instance().get(n, 0), as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

Eigen::MatrixXcd forward2d(const Eigen::MatrixXcd& x, int rows, int cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("fft size must be positive");
  Eigen::MatrixXcd in = Eigen::MatrixXcd::Zero(rows, cols);
  const int rcopy = static_cast<int>(std::min<Eigen::Index>(x.rows(), rows));
  const int ccopy = static_cast<int>(std::min<Eigen::Index>(x.cols(), cols));
  in.topLeftCorner(rcopy, ccopy) = x.topLeftCorner(rcopy, ccopy);
  Eigen::MatrixXcd out(rows, cols);
  // Eigen stores column-major, so the contiguous axis is the row index;
  // FFTW's row-major (n0, n1) maps to (cols, rows) here.
  fftw_execute_dft(PlanCache::instance().get(cols, rows), as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

}  // namespace beamacq::fft
