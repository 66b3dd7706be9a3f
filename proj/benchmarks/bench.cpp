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

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <cstdint>

#include "beamacq/experiments.hpp"
#include "beamacq/fft.hpp"

using namespace beamacq;

namespace {

constexpr double kCarrier = 28e9;

Eigen::MatrixXcd random_observation(int p, int q, Rng& rng) {
  Eigen::MatrixXcd y(p, q);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < q; ++c) y(r, c) = rng.cnormal(1.0);
  return y;
}

void bm_fft_forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.cnormal(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fft::forward(x, n));
}
BENCHMARK(bm_fft_forward)->Arg(64)->Arg(256)->Arg(1024);

void bm_ml_statistic(benchmark::State& state) {
  const int fft_size = static_cast<int>(state.range(0));
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 8, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 16, kCarrier);
  const Codebook w = build_codebook(CodebookKind::full_sweep, mobile, 16);
  const Codebook f = build_codebook(CodebookKind::full_sweep, ap, 16);
  Rng rng(2);
  const Eigen::MatrixXcd y = random_observation(16, 16, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(ml_statistic(y, w, mobile, f, ap, fft_size));
}
BENCHMARK(bm_ml_statistic)->Arg(64)->Arg(128)->Arg(256);

void bm_lml_statistic(benchmark::State& state) {
  const int fft_size = static_cast<int>(state.range(0));
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 8, kCarrier);
  const Codebook w = build_codebook(CodebookKind::full_sweep, mobile, 16);
  Rng rng(3);
  const Eigen::MatrixXcd y = random_observation(16, 16, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lml_statistic(y, w, mobile, fft_size));
}
BENCHMARK(bm_lml_statistic)->Arg(64)->Arg(128)->Arg(256);

void bm_estimate_ml(benchmark::State& state) {
  const int fft_size = static_cast<int>(state.range(0));
  const ArrayGeometry mobile = ArrayGeometry::ula(2, 8, kCarrier);
  const ArrayGeometry ap = ArrayGeometry::ula(2, 16, kCarrier);
  const Codebook w = build_codebook(CodebookKind::adaptive, mobile, 16);
  const Codebook f = build_codebook(CodebookKind::adaptive, ap, 16);
  Rng rng(4);
  const Eigen::MatrixXcd y = random_observation(16, 16, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_ml(y, w, mobile, std::span<const Codebook>(&f, 1), ap, fft_size));
}
BENCHMARK(bm_estimate_ml)->Arg(64)->Arg(256);

void bm_link_trial(benchmark::State& state) {
  LinkStudySpec spec;
  spec.ap_geom = ArrayGeometry::ula(2, 16, kCarrier);
  spec.mobile_geom = ArrayGeometry::ula(2, 8, kCarrier);
  std::uint64_t trial = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_link_trial(spec, Rng(trial_seed(5, "bench", trial++))));
}
BENCHMARK(bm_link_trial);

void bm_choose_frame(benchmark::State& state) {
  const double t_train = 274 * 4e-6;
  for (auto _ : state) benchmark::DoNotOptimize(choose_frame(2.0, t_train, 0.1, 0.9));
}
BENCHMARK(bm_choose_frame);

}  // namespace

BENCHMARK_MAIN();
