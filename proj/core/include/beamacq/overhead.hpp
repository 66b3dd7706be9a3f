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

namespace beamacq {

// Mean usable data time inside one frame when the trained path dies after
// an exponential holding time with the given rate: data flows from the end
// of training until the path dies or the frame ends, and a dead path
// yields nothing for the rest of the frame.
// Equals (exp(-rate * t_train) - exp(-rate * t_frame)) / rate, continued
// as t_frame - t_train at rate zero.
double expected_data_time(double blockage_rate_hz, double t_train_s, double t_frame_s);

// Frame length balancing retraining cost against stale-beam loss: the
// unique root t > t_train of
//   (1 + rate * t) * exp(-rate * t) = exp(-rate * t_train),
// which maximizes expected_data_time / t. Requires positive rate and
// training time.
double optimal_frame_duration(double blockage_rate_hz, double t_train_s);

// Tone bandwidth that makes the symbol fill exactly the time a slot must
// last anyway: 1 / (t_switch - tau).
double optimal_training_bandwidth(double t_switch_s, double tau_s);

// One training slot: phase shifters need t_switch to settle, the symbol
// needs tau + 1/bandwidth on air; the slot lasts whichever is longer.
double slot_duration_s(double bandwidth_hz, double t_switch_s, double tau_s);

double training_time_s(int slots, double bandwidth_hz, double t_switch_s, double tau_s);

// Frame choice for one blockage rate under a hard frame-length cap.
struct FrameChoice {
  double t_train_s = 0.0;
  double t_frame_s = 0.0;       // min(unconstrained optimum, cap)
  double overhead = 0.0;        // t_train / t_frame
  double expected_data_s = 0.0;
  double utility = 0.0;         // success * expected_data / t_frame
};

// Picks the frame length (optimal, or the cap when that binds or the rate
// is zero) and scores it. success_probability discounts the usable time by
// how often training actually lands on the right beam. Throws when the cap
// leaves no room for data.
FrameChoice choose_frame(double blockage_rate_hz, double t_train_s, double t_frame_cap_s,
                         double success_probability);

}  // namespace beamacq
