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

#include "beamacq/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace beamacq {

namespace {

int shared_sweep_length(const TrainingConfig& cfg) {
  const int q = cfg.ap_codebooks.front().size();
  for (const Codebook& f : cfg.ap_codebooks)
    if (f.size() != q)
      throw std::invalid_argument("training config: AP codebooks must share one sweep length");
  return q;
}

void check_config(const LinkSystem& sys, const TrainingConfig& cfg) {
  if (cfg.ap_codebooks.empty())
    throw std::invalid_argument("training config: no AP codebooks");
  if (static_cast<int>(cfg.ap_codebooks.size()) != sys.num_aps())
    throw std::invalid_argument("training config: one AP codebook per AP required");
  if (cfg.ap_tone_power_w.size() != cfg.ap_codebooks.size())
    throw std::invalid_argument("training config: one tone power per AP required");
  for (double p : cfg.ap_tone_power_w)
    if (!(p >= 0.0)) throw std::invalid_argument("training config: tone powers must be >= 0");
  if (!(cfg.mobile_tone_power_w >= 0.0))
    throw std::invalid_argument("training config: mobile tone power must be >= 0");
  if (!(cfg.noise_power_w > 0.0))
    throw std::invalid_argument("training config: noise power must be > 0");
  if (cfg.repetitions < 1)
    throw std::invalid_argument("training config: repetitions must be >= 1");
  if (!(cfg.ack_threshold_snr >= 0.0))
    throw std::invalid_argument("training config: ack threshold must be >= 0");
  if (cfg.mobile_codebook.size() < 1)
    throw std::invalid_argument("training config: empty mobile codebook");
  if (cfg.mobile_codebook.weights.rows() != sys.mobile_geom.total_elements())
    throw std::invalid_argument("training config: mobile codebook does not fit the array");
  for (const Codebook& f : cfg.ap_codebooks)
    if (f.weights.rows() != sys.ap_geom.total_elements())
      throw std::invalid_argument("training config: AP codebook does not fit the array");
  shared_sweep_length(cfg);
}

AngleEstimate mobile_estimate(const Eigen::MatrixXcd& y, const LinkSystem& sys,
                              const TrainingConfig& cfg, EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::mp: {
      if (!cfg.mobile_codebook.directional())
        throw std::invalid_argument("mp estimator requires a directional codebook");
      const MpEstimate m = estimate_mp(y);
      AngleEstimate est;
      est.aoa = cfg.mobile_codebook.steer_phases[m.combiner_index];
      est.has_aod = false;
      est.statistic = m.power;
      est.aoa_index = {m.combiner_index};
      est.degenerate = (y.norm() == 0.0);
      return est;
    }
    case EstimatorKind::ml:
      return estimate_ml(y, cfg.mobile_codebook, sys.mobile_geom,
                         std::span<const Codebook>(cfg.ap_codebooks), sys.ap_geom, cfg.fft_size);
    case EstimatorKind::lml:
      return estimate_lml(y, cfg.mobile_codebook, sys.mobile_geom, cfg.fft_size);
  }
  throw std::logic_error("unreachable estimator kind");
}

}  // namespace

void LinkSystem::validate() const {
  mobile_geom.validate();
  ap_geom.validate();
  if (channels.empty()) throw std::invalid_argument("link system: no APs");
  const std::size_t k = channels.front().size();
  for (const auto& row : channels)
    if (row.size() != k)
      throw std::invalid_argument("link system: ragged channel table");
}

int training_slots(const TrainingConfig& cfg) {
  if (cfg.ap_codebooks.empty())
    throw std::invalid_argument("training config: no AP codebooks");
  const int q = shared_sweep_length(cfg);
  return cfg.repetitions * cfg.mobile_codebook.size() * q + q + 2;
}

Eigen::MatrixXcd downlink_observations(const LinkSystem& sys, const TrainingConfig& cfg,
                                       int mobile, Rng& noise_rng) {
  sys.validate();
  check_config(sys, cfg);
  if (mobile < 0 || mobile >= sys.num_mobiles())
    throw std::invalid_argument("downlink_observations: mobile index out of range");

  const Eigen::MatrixXcd& w = cfg.mobile_codebook.weights;
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(cfg.mobile_codebook.size(),
                                              shared_sweep_length(cfg));
  for (int l = 0; l < sys.num_aps(); ++l) {
    const Eigen::MatrixXcd h = channel_matrix(sys.channels[l][mobile], sys.mobile_geom,
                                              sys.ap_geom);
    y.noalias() += std::sqrt(cfg.ap_tone_power_w[l]) *
                   (w.adjoint() * h * cfg.ap_codebooks[l].weights);
  }
  const double variance = cfg.noise_power_w / cfg.repetitions;
  for (Eigen::Index p = 0; p < y.rows(); ++p)
    for (Eigen::Index q = 0; q < y.cols(); ++q) y(p, q) += noise_rng.cnormal(variance);
  return y;
}

std::vector<Eigen::VectorXcd> uplink_observations(const LinkSystem& sys,
                                                  const TrainingConfig& cfg, int mobile,
                                                  const Eigen::VectorXcd& mobile_beam,
                                                  Rng& noise_rng) {
  sys.validate();
  check_config(sys, cfg);
  if (mobile < 0 || mobile >= sys.num_mobiles())
    throw std::invalid_argument("uplink_observations: mobile index out of range");
  if (mobile_beam.size() != sys.mobile_geom.total_elements())
    throw std::invalid_argument("uplink_observations: beam does not fit the mobile array");

  const double amp = std::sqrt(cfg.mobile_tone_power_w);
  std::vector<Eigen::VectorXcd> received(static_cast<std::size_t>(sys.num_aps()));
  for (int l = 0; l < sys.num_aps(); ++l) {
    const Eigen::MatrixXcd h = uplink_channel_matrix(sys.channels[l][mobile], sys.mobile_geom,
                                                     sys.ap_geom);
    Eigen::VectorXcd r = amp * (cfg.ap_codebooks[l].weights.adjoint() * (h * mobile_beam));
    for (Eigen::Index q = 0; q < r.size(); ++q) r[q] += noise_rng.cnormal(cfg.noise_power_w);
    received[static_cast<std::size_t>(l)] = std::move(r);
  }
  return received;
}

ApUplinkReport resolve_uplink(const Eigen::VectorXcd& r, const Codebook& ap_codebook,
                              const ArrayGeometry& ap_geom, EstimatorKind kind, int fft_size) {
  ApUplinkReport report;
  if (kind == EstimatorKind::mp) {
    if (!ap_codebook.directional())
      throw std::invalid_argument("mp estimator requires a directional codebook");
    if (r.size() != ap_codebook.size())
      throw std::invalid_argument("resolve_uplink: observation does not match the codebook");
    const MpEstimate m = estimate_mp(r);
    report.score = m.power;
    report.aod = ap_codebook.steer_phases[m.combiner_index];
    report.aod_index = {m.combiner_index};
    report.degenerate = (r.norm() == 0.0);
    return report;
  }
  const AngleEstimate est = estimate_lml(r, ap_codebook, ap_geom, fft_size);
  report.score = est.statistic;
  report.aod = est.aoa;
  report.aod_index = est.aoa_index;
  report.degenerate = est.degenerate;
  return report;
}

InitialAccessResult run_initial_access(const LinkSystem& sys, const TrainingConfig& cfg,
                                       EstimatorKind kind, Rng& rng) {
  sys.validate();
  check_config(sys, cfg);

  const int num_aps = sys.num_aps();
  const int num_mobiles = sys.num_mobiles();
  InitialAccessResult result;
  result.training_slots = training_slots(cfg);
  result.mobiles.resize(static_cast<std::size_t>(num_mobiles));
  result.schedules.resize(static_cast<std::size_t>(num_aps));

  std::vector<Eigen::VectorXcd> mobile_beams(static_cast<std::size_t>(num_mobiles));
  std::vector<std::vector<ApUplinkReport>> reports(static_cast<std::size_t>(num_aps));

  for (int k = 0; k < num_mobiles; ++k) {
    Rng dl_rng = rng.fork(static_cast<std::uint64_t>(2 * k));
    const Eigen::MatrixXcd y = downlink_observations(sys, cfg, k, dl_rng);

    MobileOutcome& out = result.mobiles[static_cast<std::size_t>(k)];
    out.mobile_id = k;
    out.estimate = mobile_estimate(y, sys, cfg, kind);

    const Beam beam = steering_beam_from_phases(sys.mobile_geom, out.estimate.aoa, 1.0);
    mobile_beams[static_cast<std::size_t>(k)] = beam.weights;

    Rng ul_rng = rng.fork(static_cast<std::uint64_t>(2 * k + 1));
    const std::vector<Eigen::VectorXcd> feedback =
        uplink_observations(sys, cfg, k, beam.weights, ul_rng);
    for (int l = 0; l < num_aps; ++l) {
      ApUplinkReport report = resolve_uplink(feedback[static_cast<std::size_t>(l)],
                                             cfg.ap_codebooks[static_cast<std::size_t>(l)],
                                             sys.ap_geom, kind, cfg.fft_size);
      report.mobile_id = k;
      reports[static_cast<std::size_t>(l)].push_back(std::move(report));
    }
  }

  const int rf_chains = sys.ap_geom.num_subarrays;
  for (int l = 0; l < num_aps; ++l) {
    auto& pool = reports[static_cast<std::size_t>(l)];
    std::sort(pool.begin(), pool.end(), [](const ApUplinkReport& a, const ApUplinkReport& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.mobile_id < b.mobile_id;
    });
    const int taken = std::min<int>(rf_chains, static_cast<int>(pool.size()));
    auto& schedule = result.schedules[static_cast<std::size_t>(l)];
    schedule.assign(pool.begin(), pool.begin() + taken);
    for (const ApUplinkReport& report : schedule)
      result.mobiles[static_cast<std::size_t>(report.mobile_id)].scheduled = true;
  }

  for (int l = 0; l < num_aps; ++l) {
    for (const ApUplinkReport& report : result.schedules[static_cast<std::size_t>(l)]) {
      const int k = report.mobile_id;
      const Channel& ch = sys.channels[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
      const Eigen::VectorXcd ap_beam =
          steering_beam_from_phases(sys.ap_geom, report.aod, 1.0).weights;
      const Eigen::VectorXcd& mobile_beam = mobile_beams[static_cast<std::size_t>(k)];

      const double dl_snr =
          post_training_snr(channel_matrix(ch, sys.mobile_geom, sys.ap_geom), mobile_beam,
                            ap_beam, cfg.ap_tone_power_w[static_cast<std::size_t>(l)],
                            cfg.noise_power_w);
      const double ul_snr =
          post_training_snr(uplink_channel_matrix(ch, sys.mobile_geom, sys.ap_geom), ap_beam,
                            mobile_beam, cfg.mobile_tone_power_w, cfg.noise_power_w);
      if (dl_snr < cfg.ack_threshold_snr || ul_snr < cfg.ack_threshold_snr) continue;

      MobileOutcome& out = result.mobiles[static_cast<std::size_t>(k)];
      out.acknowledged = true;
      if (dl_snr > out.downlink_snr || out.serving_ap < 0) {
        out.downlink_snr = dl_snr;
        out.serving_ap = l;
      }
    }
  }
  return result;
}

}  // namespace beamacq
