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
#include "beamacq/channel.hpp"
#include "beamacq/codebooks.hpp"
#include "beamacq/estimators.hpp"
#include "beamacq/rng.hpp"

namespace beamacq {

// Tone-training parameters shared by every link in one acquisition round.
// Pilot symbols are the constant 1; beam powers enter through the per-AP
// tone powers, and codebook columns stay unit norm.
struct TrainingConfig {
  int repetitions = 1;                  // coherent averages per beam pair
  std::vector<double> ap_tone_power_w;  // one entry per AP
  double mobile_tone_power_w = 0.0;
  double noise_power_w = 0.0;           // receiver noise over the tone band
  double ack_threshold_snr = 1.0;       // linear two-way handshake threshold
  std::vector<Codebook> ap_codebooks;   // all must share one sweep length
  Codebook mobile_codebook;
  int fft_size = 64;
};

// Path-level channels between every AP and every mobile, all sharing one
// array model per side. channels[l][k] connects AP l to mobile k.
struct LinkSystem {
  ArrayGeometry mobile_geom;
  ArrayGeometry ap_geom;
  std::vector<std::vector<Channel>> channels;

  int num_aps() const { return static_cast<int>(channels.size()); }
  int num_mobiles() const { return channels.empty() ? 0 : static_cast<int>(channels[0].size()); }
  void validate() const;
};

// Slots one acquisition round occupies: repetitions * P * Q sweep slots,
// Q feedback slots, and 2 handshake slots.
int training_slots(const TrainingConfig& cfg);

// Combined sweep observations at mobile k: Y[p][q] = sum_l sqrt(rho_l) *
// w_p^H H_lk f_lq + noise, with noise variance noise_power / repetitions
// per entry after averaging. Entries are drawn row-major from noise_rng.
Eigen::MatrixXcd downlink_observations(const LinkSystem& sys, const TrainingConfig& cfg,
                                       int mobile, Rng& noise_rng);

// Feedback observations, one Q-vector per AP: the mobile holds mobile_beam
// at its tone power while each AP sweeps its own codebook as a combiner
// bank over the reverse channel. Noise variance is the full noise power.
// Entries are drawn AP-major from noise_rng.
std::vector<Eigen::VectorXcd> uplink_observations(const LinkSystem& sys,
                                                  const TrainingConfig& cfg, int mobile,
                                                  const Eigen::VectorXcd& mobile_beam,
                                                  Rng& noise_rng);

// One AP's view of one mobile after the feedback slots.
struct ApUplinkReport {
  int mobile_id = 0;
  double score = 0.0;          // peak feedback statistic
  PhasePair aod;               // departure direction the AP will steer
  std::vector<int> aod_index;  // grid (or beam) index behind the estimate
  bool degenerate = false;
};

// Feedback direction estimate at one AP from its Q-vector. The matched
// estimators search the response grid; the plain power estimator picks the
// strongest combiner and needs a directional codebook.
ApUplinkReport resolve_uplink(const Eigen::VectorXcd& r, const Codebook& ap_codebook,
                              const ArrayGeometry& ap_geom, EstimatorKind kind, int fft_size);

struct MobileOutcome {
  int mobile_id = 0;
  AngleEstimate estimate;   // downlink estimate driving the feedback beam
  bool scheduled = false;   // entered at least one AP's service list
  bool acknowledged = false;
  int serving_ap = -1;      // -1 when no handshake completed
  double downlink_snr = 0.0;  // linear, at the serving AP
};

struct InitialAccessResult {
  std::vector<MobileOutcome> mobiles;
  // Per AP, the scheduled reports in service order (score descending, then
  // smaller mobile id). At most one entry per RF chain.
  std::vector<std::vector<ApUplinkReport>> schedules;
  int training_slots = 0;
};

// Full acquisition round: downlink sweep and per-mobile direction
// estimates, feedback transmissions, per-AP scheduling of the strongest
// mobiles (one per RF chain), and a deterministic two-way handshake at the
// threshold SNR. A mobile's serving AP is the acknowledging AP with the
// best downlink SNR, ties to the smaller AP id. Noise streams fork off rng
// per mobile, so reruns with equal seeds and sweep shapes reuse the same
// draws regardless of estimator choice.
InitialAccessResult run_initial_access(const LinkSystem& sys, const TrainingConfig& cfg,
                                       EstimatorKind kind, Rng& rng);

}  // namespace beamacq
