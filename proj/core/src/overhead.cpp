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

#include "beamacq/overhead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamacq {

double expected_data_time(double blockage_rate_hz, double t_train_s, double t_frame_s) {
  if (blockage_rate_hz < 0.0) throw std::invalid_argument("expected_data_time: rate must be >= 0");
  if (t_train_s < 0.0 || t_frame_s < t_train_s)
    throw std::invalid_argument("expected_data_time: need 0 <= t_train <= t_frame");
  if (blockage_rate_hz == 0.0) return t_frame_s - t_train_s;
  return -std::exp(-blockage_rate_hz * t_train_s) *
         std::expm1(-blockage_rate_hz * (t_frame_s - t_train_s)) / blockage_rate_hz;
}

double optimal_frame_duration(double blockage_rate_hz, double t_train_s) {
  if (blockage_rate_hz <= 0.0)
    throw std::invalid_argument("optimal_frame_duration: rate must be > 0");
  if (t_train_s <= 0.0)
    throw std::invalid_argument("optimal_frame_duration: training time must be > 0");

  // (1 + r t) e^{-r t} falls monotonically for t > 0, starts above the
  // target at t = t_train and crosses it exactly once.
  const double target = std::exp(-blockage_rate_hz * t_train_s);
  const auto excess = [&](double t) {
    return (1.0 + blockage_rate_hz * t) * std::exp(-blockage_rate_hz * t) - target;
  };
  double lo = t_train_s;
  double hi = t_train_s + 1.0 / blockage_rate_hz;
  for (int i = 0; i < 200 && excess(hi) > 0.0; ++i) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double optimal_training_bandwidth(double t_switch_s, double tau_s) {
  if (tau_s < 0.0) throw std::invalid_argument("optimal_training_bandwidth: tau must be >= 0");
  if (t_switch_s <= tau_s)
    throw std::invalid_argument("optimal_training_bandwidth: switch time must exceed tau");
  return 1.0 / (t_switch_s - tau_s);
}

double slot_duration_s(double bandwidth_hz, double t_switch_s, double tau_s) {
  if (bandwidth_hz <= 0.0) throw std::invalid_argument("slot_duration: bandwidth must be > 0");
  if (t_switch_s < 0.0 || tau_s < 0.0)
    throw std::invalid_argument("slot_duration: times must be >= 0");
  return std::max(t_switch_s, tau_s + 1.0 / bandwidth_hz);
}

double training_time_s(int slots, double bandwidth_hz, double t_switch_s, double tau_s) {
  if (slots < 1) throw std::invalid_argument("training_time: slots must be >= 1");
  return slots * slot_duration_s(bandwidth_hz, t_switch_s, tau_s);
}

FrameChoice choose_frame(double blockage_rate_hz, double t_train_s, double t_frame_cap_s,
                         double success_probability) {
  if (blockage_rate_hz < 0.0) throw std::invalid_argument("choose_frame: rate must be >= 0");
  if (t_train_s <= 0.0) throw std::invalid_argument("choose_frame: training time must be > 0");
  if (t_frame_cap_s <= t_train_s)
    throw std::invalid_argument("choose_frame: cap leaves no room for data");
  if (success_probability < 0.0 || success_probability > 1.0)
    throw std::invalid_argument("choose_frame: success probability outside [0, 1]");

  FrameChoice choice;
  choice.t_train_s = t_train_s;
  choice.t_frame_s = t_frame_cap_s;
  if (blockage_rate_hz > 0.0)
    choice.t_frame_s =
        std::min(t_frame_cap_s, optimal_frame_duration(blockage_rate_hz, t_train_s));
  choice.overhead = t_train_s / choice.t_frame_s;
  choice.expected_data_s = expected_data_time(blockage_rate_hz, t_train_s, choice.t_frame_s);
  choice.utility = success_probability * choice.expected_data_s / choice.t_frame_s;
  return choice;
}

}  // namespace beamacq
