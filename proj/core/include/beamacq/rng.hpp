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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace beamacq {

// Deterministic random stream. The engine is std::mt19937_64 but every
// distribution is an explicit formula, so a given seed produces the same
// draws on any standard library.
//
// Streams are forkable by tag: fork(tag) derives a child seed from the
// root seed alone, not from the current engine position. Draws taken from
// one fork can never shift the values another fork produces, which keeps
// per-mobile noise independent of how many other mobiles exist and makes
// trial loops safe to parallelize.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child stream identified by (root seed, tag). Same tag, same child.
  Rng fork(std::uint64_t tag) const;

  std::uint64_t root_seed() const { return root_; }

  std::uint64_t next_u64();

  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);    // [lo, hi)
  double normal();                         // standard normal
  double exponential(double rate);         // mean 1/rate, rate > 0
  std::complex<double> cnormal(double variance);  // circular CN(0, variance)

 private:
  std::uint64_t root_;
  std::mt19937_64 engine_;
};

// 64-bit seed derivation helpers. mix_seed is SplitMix64's finalizer; the
// string hash is FNV-1a. Both are fixed constants of the output format:
// changing them changes every derived stream.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t hash_name(std::string_view name);

// Per-trial seed for an experiment: master seed + experiment name + trial.
std::uint64_t trial_seed(std::uint64_t master, std::string_view experiment, std::uint64_t trial);

}  // namespace beamacq
