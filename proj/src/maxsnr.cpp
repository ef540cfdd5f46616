// Copyright 2026 The litebeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "litebeam/maxsnr.hpp"

#include <algorithm>
#include <cmath>

namespace litebeam {

std::array<double, 2> Hermitian2::eigenvalues() const {
  const double mean = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mean - r, mean + r};
}

double Hermitian2::quadratic(const Weight2& w) const {
  const auto mw = apply(w);
  return (std::conj(w[0]) * mw[0] + std::conj(w[1]) * mw[1]).real();
}

std::vector<std::size_t> BinPartition::target_bins() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == BinClass::Target) out.push_back(k);
  return out;
}

std::vector<std::size_t> BinPartition::interference_bins() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == BinClass::Interference) out.push_back(k);
  return out;
}

std::size_t BinPartition::count(BinClass c) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), c));
}

double adaptive_beamwidth(double gap, double n_votes, double max_deg, double decay) {
  if (!(n_votes > 0.0) || gap < 0.0) throw Error("adaptive_beamwidth needs N > 0 and gap >= 0");
  const double lo = n_votes / 5.0, hi = n_votes / 2.0;
  const double g = std::clamp(gap, lo, hi);
  return max_deg * std::exp(-decay * (g - lo) / (hi - lo));
}

BinPartition classify_bins(const SpectroFrame& frame, double theta_hat_b_deg,
                           double beamwidth_deg, double spacing, double sound_speed,
                           const BandLimits& band) {
  if (frame.num_channels() < 2) throw Error("classify_bins needs two channels");
  if (std::abs(theta_hat_b_deg) > 90.0) throw Error("theta_hat_b must lie in [-90, 90]");
  const auto phases = bin_phase(frame, 0, 1);
  const double half_bw = 0.5 * beamwidth_deg * kPi / 180.0;
  BinPartition part;
  part.labels.assign(frame.num_bins(), BinClass::Excluded);
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const double f = frame.bin_hz(k);
    if (!phases[k] || !band.contains(f, spacing, sound_speed)) continue;
    const double expected = phase_difference(f, spacing, theta_hat_b_deg, sound_speed);
    const double residual = wrap_radians(*phases[k] - expected);
    const double tol = 2.0 * kPi * f * spacing / sound_speed * std::sin(half_bw);
    part.labels[k] = std::cos(residual) >= std::cos(tol) ? BinClass::Target : BinClass::Interference;
  }
  return part;
}

BandEnergies band_energies(const SpectroFrame& frame, const BinPartition& partition) {
  if (partition.labels.size() != frame.num_bins()) throw Error("partition does not match frame");
  if (frame.num_channels() < 2) throw Error("band_energies needs two channels");
  BandEnergies e;
  for (std::size_t k = 0; k < partition.labels.size(); ++k) {
    if (partition.labels[k] == BinClass::Target) e.target += std::norm(frame.bins[0][k]);
    if (partition.labels[k] == BinClass::Interference) e.interference += std::norm(frame.bins[1][k]);
  }
  return e;
}

double contrast_weight(double energy) {
  if (energy < 0.0) throw Error("energy must be non-negative");
  const double e = std::max(energy, kContrastFloor);
  return 2.0 / (3.0 * std::cbrt(e * e));
}

AuxCovariances AuxCovariances::zeros(std::size_t num_bins, double beta) {
  AuxCovariances s;
  s.v1.assign(num_bins, Hermitian2{});
  s.v2.assign(num_bins, Hermitian2{});
  s.beta = beta;
  return s;
}

AuxCovariances update_covariances(AuxCovariances state, const SpectroFrame& frame,
                                  double e_target, double e_interf) {
  if (frame.num_channels() < 2) throw Error("update_covariances needs two channels");
  if (state.v1.size() != frame.num_bins() || state.v2.size() != frame.num_bins())
    throw Error("covariance state does not match frame");
  if (!(state.beta >= 0.0 && state.beta <= 1.0)) throw Error("beta must lie in [0, 1]");
  const double w1 = contrast_weight(e_target) * (1.0 - state.beta);
  const double w2 = contrast_weight(e_interf) * (1.0 - state.beta);
  for (std::size_t k = 0; k < frame.num_bins(); ++k) {
    const Complex x0 = frame.bins[0][k], x1 = frame.bins[1][k];
    state.v1[k] = Hermitian2::outer(x0, x1, w1) + state.v1[k] * state.beta;
    state.v2[k] = Hermitian2::outer(x0, x1, w2) + state.v2[k] * state.beta;
  }
  return state;
}

Hermitian2 regularized(const Hermitian2& b) {
  const double tr = b.trace();
  const double eps = tr > 1e-300 ? 1e-6 * tr / 2.0 : 1e-12;
  return b + Hermitian2::identity(eps);
}

GevSolution solve_gevd(const Hermitian2& a, const Hermitian2& b_raw) {
  GevSolution out;
  const double scale_a = std::abs(a.a) + std::abs(a.d) + std::abs(a.b);
  if (!(scale_a > 1e-300)) {
    out.w = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    out.degenerate = true;
    return out;
  }
  const Hermitian2 b = regularized(b_raw);
  // det(A - lambda B) = det(B) lambda^2 - p lambda + det(A)
  const double det_b = b.det();
  const double p = a.a * b.d + a.d * b.a - 2.0 * (a.b * std::conj(b.b)).real();
  const double det_a = a.det();
  const double disc = std::max(0.0, p * p - 4.0 * det_b * det_a);
  double lambda;
  if (p >= 0.0)
    lambda = (p + std::sqrt(disc)) / (2.0 * det_b);
  else
    lambda = 2.0 * det_a / (p - std::sqrt(disc));
  out.lambda_max = lambda;

  // Null vector of the larger row of (A - lambda B).
  const Complex r00 = a.a - lambda * b.a, r01 = a.b - lambda * b.b;
  const Complex r10 = std::conj(a.b) - lambda * std::conj(b.b), r11 = a.d - lambda * b.d;
  const double n0 = std::norm(r00) + std::norm(r01);
  const double n1 = std::norm(r10) + std::norm(r11);
  Weight2 w;
  if (std::max(n0, n1) <= 1e-30 * scale_a * scale_a) {
    // A is proportional to B; every direction is optimal.
    w = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  } else if (n0 >= n1) {
    w = {-r01, r00};
  } else {
    w = {-r11, r10};
  }
  const double norm = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
  out.w = {w[0] / norm, w[1] / norm};
  return out;
}

Weight2 normalize_distortionless(const Weight2& w, const SteeringVector& s) {
  // w^H s
  const Complex response = std::conj(w[0]) * s.entries[0] + std::conj(w[1]) * s.entries[1];
  if (std::abs(response) < 1e-12) throw Error("target in null space");
  // (w / conj(response))^H s = response / response = 1
  const Complex scale = std::conj(response);
  return {w[0] / scale, w[1] / scale};
}

FrameSequence apply_weights(const FrameSequence& frames, const BeamWeights& weights) {
  return apply_weight_schedule(frames, {weights});
}

FrameSequence apply_weight_schedule(const FrameSequence& frames,
                                    const std::vector<BeamWeights>& schedule) {
  if (schedule.empty()) throw Error("empty weight schedule");
  FrameSequence out;
  out.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& frame = frames[t];
    const auto& weights = schedule[std::min(t, schedule.size() - 1)];
    if (frame.num_channels() < 2) throw Error("apply_weights needs two channels");
    if (weights.w.size() != frame.num_bins()) throw Error("weight/bin count mismatch");
    SpectroFrame y;
    y.frame_index = frame.frame_index;
    y.hz_per_bin = frame.hz_per_bin;
    y.bins.assign(1, std::vector<Complex>(frame.num_bins()));
    for (std::size_t k = 0; k < frame.num_bins(); ++k) {
      const auto& w = weights.w[k];
      y.bins[0][k] = std::conj(w[0]) * frame.bins[0][k] + std::conj(w[1]) * frame.bins[1][k];
    }
    out.push_back(std::move(y));
  }
  return out;
}

GevObjective parse_objective(const std::string& name) {
  if (name == "literal") return GevObjective::Literal;
  if (name == "inverse") return GevObjective::Inverse;
  throw Error("unknown gev objective '" + name + "'");
}

std::string objective_name(GevObjective objective) {
  return objective == GevObjective::Literal ? "literal" : "inverse";
}

void MaxSnrConfig::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error("beta must lie in [0, 1]");
  if (fixed_beamwidth_deg && !(*fixed_beamwidth_deg > 0.0 && *fixed_beamwidth_deg <= 180.0))
    throw Error("fixed_beamwidth_deg must lie in (0, 180]");
  if (!(edf_max_deg > 0.0 && edf_max_deg <= 180.0)) throw Error("edf_max_deg must lie in (0, 180]");
  if (!(edf_decay > 0.0)) throw Error("edf_decay must be positive");
  if (!(ssl.dual_grid_deg > 0.0) || !(ssl.circular_grid_deg > 0.0))
    throw Error("grid steps must be positive");
  if (!(ssl.band.low_hz >= 0.0 && ssl.band.high_hz > ssl.band.low_hz))
    throw Error("band limits must satisfy 0 <= low < high");
}

SteeringVector TargetModel::steering(double bin_hz) const {
  if (center_aligned) return {{Complex(0.5, 0.0), Complex(0.5, 0.0)}, bin_hz, theta_b_deg};
  return steering_vector(bin_hz, spacing, theta_b_deg, sound_speed);
}

namespace {

Weight2 delay_and_sum(const SteeringVector& s) {
  const double n = std::norm(s.entries[0]) + std::norm(s.entries[1]);
  return {s.entries[0] / n, s.entries[1] / n};
}

BeamWeights weights_from(const AuxCovariances& state, const TargetModel& target,
                         double hz_per_bin, GevObjective objective) {
  BeamWeights bw;
  const std::size_t bins = state.v1.size();
  bw.w.resize(bins);
  bw.lambda_max.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const auto s = target.steering(hz_per_bin * static_cast<double>(k));
    const auto sol = objective == GevObjective::Literal ? solve_gevd(state.v1[k], state.v2[k])
                                                        : solve_gevd(state.v2[k], state.v1[k]);
    bw.lambda_max[k] = sol.lambda_max;
    Weight2 w = delay_and_sum(s);
    if (!sol.degenerate) {
      try {
        w = normalize_distortionless(sol.w, s);
      } catch (const Error&) {
        // keep delay-and-sum at this bin
      }
    }
    bw.w[k] = w;
  }
  return bw;
}

}  // namespace

BeamformResult beamform_with_doa(const FrameSequence& frames, const TargetModel& target,
                                 const DoaEstimate& doa, double reported_doa_deg,
                                 double gap_votes_total, const MaxSnrConfig& cfg) {
  cfg.validate();
  if (frames.empty()) throw Error("beamformer needs at least one frame");
  const std::size_t bins = frames.front().num_bins();
  const double hz_per_bin = frames.front().hz_per_bin;

  BeamformResult result;
  result.doa = doa;
  result.beamwidth_deg =
      cfg.fixed_beamwidth_deg
          ? *cfg.fixed_beamwidth_deg
          : adaptive_beamwidth(static_cast<double>(doa.gap), gap_votes_total, cfg.edf_max_deg,
                               cfg.edf_decay);

  const auto k1 = std::min<std::size_t>(bins - 1, static_cast<std::size_t>(std::lround(1000.0 / hz_per_bin)));
  auto state = AuxCovariances::zeros(bins, cfg.beta);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& frame = frames[t];
    const auto part = classify_bins(frame, target.residual_reference_deg(), result.beamwidth_deg,
                                    target.spacing, target.sound_speed, cfg.ssl.band);
    const auto e = band_energies(frame, part);
    // Offline mode averages all frames uniformly: beta_n = (n - 1) / n.
    state.beta = cfg.online ? cfg.beta : static_cast<double>(t) / static_cast<double>(t + 1);
    state = update_covariances(std::move(state), frame, e.target, e.interference);

    FrameDiagnostics diag;
    diag.frame = t;
    diag.doa_deg = reported_doa_deg;
    diag.gap = doa.gap;
    diag.beamwidth_deg = result.beamwidth_deg;
    diag.e_target = e.target;
    diag.e_interf = e.interference;
    if (cfg.online) {
      result.weights.push_back(weights_from(state, target, hz_per_bin, cfg.objective));
      diag.lambda_1khz = result.weights.back().lambda_max[k1];
    }
    result.diagnostics.push_back(diag);
  }
  if (!cfg.online) {
    result.weights.push_back(weights_from(state, target, hz_per_bin, cfg.objective));
    for (auto& d : result.diagnostics) d.lambda_1khz = result.weights.back().lambda_max[k1];
  }
  result.output = apply_weight_schedule(frames, result.weights);
  return result;
}

BeamformResult beamform_pipeline(const FrameSequence& frames, double spacing,
                                 double sound_speed, const MaxSnrConfig& cfg) {
  cfg.validate();
  const auto doa = dual_doa(frames, spacing, sound_speed, cfg.ssl);
  TargetModel target{doa.azimuth_deg, spacing, sound_speed, false};
  return beamform_with_doa(frames, target, doa, doa.azimuth_deg,
                           static_cast<double>(doa.n_votes), cfg);
}

}  // namespace litebeam
