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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "beamacq/overhead.hpp"
#include "beamacq/rng.hpp"
#include "support/oracles.hpp"

using namespace beamacq;

TEST_CASE("expected data time matches the closed form") {
  const double rate = 4.0;
  const double t_train = 0.002;
  const double t_frame = 0.015;
  const double want = (std::exp(-rate * t_train) - std::exp(-rate * t_frame)) / rate;
  CHECK(expected_data_time(rate, t_train, t_frame) == doctest::Approx(want).epsilon(1e-12));

  CHECK(expected_data_time(0.0, t_train, t_frame) == doctest::Approx(t_frame - t_train));
  CHECK(expected_data_time(rate, t_frame, t_frame) == doctest::Approx(0.0));
  CHECK(expected_data_time(rate, 0.001, t_frame) > expected_data_time(rate, 0.004, t_frame));
}

TEST_CASE("expected data time matches a Monte Carlo rerun of the frame") {
  Rng rng(80);
  for (const double rate : {0.5, 3.0, 25.0}) {
    const double t_train = 0.002;
    const double t_frame = 0.020;
    const double mc = testing::mc_expected_data_time(rate, t_train, t_frame, 200000, rng);
    CHECK(expected_data_time(rate, t_train, t_frame) == doctest::Approx(mc).epsilon(0.02));
  }
}

TEST_CASE("expected data time rejects inconsistent arguments") {
  CHECK_THROWS_AS(expected_data_time(-1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(expected_data_time(1.0, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(expected_data_time(1.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("optimal frame duration satisfies the stationarity condition") {
  for (const double rate : {0.5, 2.0, 40.0}) {
    for (const double t_train : {0.0005, 0.003, 0.02}) {
      const double t = optimal_frame_duration(rate, t_train);
      CHECK(t > t_train);
      const double lhs = (1.0 + rate * t) * std::exp(-rate * t);
      const double rhs = std::exp(-rate * t_train);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(optimal_frame_duration(0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(optimal_frame_duration(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("optimal frame duration maximizes data time per unit frame") {
  const double rate = 2.0;
  const double t_train = 0.003;
  const double t_star = optimal_frame_duration(rate, t_train);
  const auto efficiency = [&](double t) { return expected_data_time(rate, t_train, t) / t; };

  const double best = efficiency(t_star);
  CHECK(best > efficiency(t_star * 0.99));
  CHECK(best > efficiency(t_star * 1.01));
  for (int i = 1; i <= 400; ++i) {
    const double t = t_train * (1.0 + 0.05 * i);
    CHECK(efficiency(t) <= best + 1e-12);
  }
}

TEST_CASE("training bandwidth fills the switching gap exactly") {
  CHECK(optimal_training_bandwidth(4e-6, 0.0) == doctest::Approx(250e3).epsilon(1e-12));
  CHECK(optimal_training_bandwidth(5e-6, 1e-6) == doctest::Approx(250e3).epsilon(1e-12));
  CHECK_THROWS_AS(optimal_training_bandwidth(1e-6, -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(optimal_training_bandwidth(1e-6, 1e-6), std::invalid_argument);
}

TEST_CASE("slot duration is the longer of settling and symbol time") {
  CHECK(slot_duration_s(1e9, 4e-6, 0.0) == doctest::Approx(4e-6));
  CHECK(slot_duration_s(100e3, 4e-6, 0.0) == doctest::Approx(1e-5));
  CHECK(slot_duration_s(250e3, 4e-6, 0.0) == doctest::Approx(4e-6));
  CHECK(slot_duration_s(1e6, 2e-6, 5e-7) == doctest::Approx(2e-6));
  CHECK_THROWS_AS(slot_duration_s(0.0, 1e-6, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(slot_duration_s(1e6, -1.0, 0.0), std::invalid_argument);

  CHECK(training_time_s(274, 250e3, 4e-6, 0.0) == doctest::Approx(274 * 4e-6));
  CHECK_THROWS_AS(training_time_s(0, 250e3, 4e-6, 0.0), std::invalid_argument);
}

TEST_CASE("frame choice takes the optimum until the cap binds") {
  const double rate = 2.0;
  const double t_train = 0.003;
  const double t_star = optimal_frame_duration(rate, t_train);

  const FrameChoice loose = choose_frame(rate, t_train, 10.0, 0.9);
  CHECK(loose.t_frame_s == doctest::Approx(t_star).epsilon(1e-9));
  CHECK(loose.t_train_s == doctest::Approx(t_train));
  CHECK(loose.overhead == doctest::Approx(t_train / t_star).epsilon(1e-9));
  CHECK(loose.expected_data_s ==
        doctest::Approx(expected_data_time(rate, t_train, loose.t_frame_s)));
  CHECK(loose.utility == doctest::Approx(0.9 * loose.expected_data_s / loose.t_frame_s));

  const double cap = 0.5 * t_star;
  const FrameChoice tight = choose_frame(rate, t_train, cap, 0.9);
  CHECK(tight.t_frame_s == doctest::Approx(cap));
  CHECK(tight.overhead == doctest::Approx(t_train / cap));

  const FrameChoice calm = choose_frame(0.0, t_train, 0.1, 1.0);
  CHECK(calm.t_frame_s == doctest::Approx(0.1));
  CHECK(calm.expected_data_s == doctest::Approx(0.1 - t_train));
}

TEST_CASE("frame choice rejects impossible setups") {
  CHECK_THROWS_WITH_AS(choose_frame(1.0, 0.01, 0.01, 0.5),
                       "choose_frame: cap leaves no room for data", std::invalid_argument);
  CHECK_THROWS_AS(choose_frame(-1.0, 0.01, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(choose_frame(1.0, 0.0, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(choose_frame(1.0, 0.01, 0.1, 1.5), std::invalid_argument);
}
