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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "litebeam/geometry.hpp"
#include "litebeam/signal.hpp"
#include "litebeam/ssl.hpp"

namespace litebeam {

// 2x2 Hermitian matrix [[a, b], [conj(b), d]].
struct Hermitian2 {
  double a = 0.0;
  Complex b{};
  double d = 0.0;

  static Hermitian2 outer(const Complex& x0, const Complex& x1, double weight = 1.0) {
    return {weight * std::norm(x0), weight * x0 * std::conj(x1), weight * std::norm(x1)};
  }
  static Hermitian2 identity(double s = 1.0) { return {s, Complex{}, s}; }

  double trace() const { return a + d; }
  double det() const { return a * d - std::norm(b); }
  // Smaller and larger eigenvalue.
  std::array<double, 2> eigenvalues() const;
  std::array<Complex, 2> apply(const std::array<Complex, 2>& w) const {
    return {a * w[0] + b * w[1], std::conj(b) * w[0] + d * w[1]};
  }
  // w^H M w (real for Hermitian M).
  double quadratic(const std::array<Complex, 2>& w) const;

  Hermitian2 operator+(const Hermitian2& o) const { return {a + o.a, b + o.b, d + o.d}; }
  Hermitian2 operator*(double s) const { return {a * s, b * s, d * s}; }
};

using Weight2 = std::array<Complex, 2>;

enum class BinClass : unsigned char { Excluded, Target, Interference };

struct BinPartition {
  std::vector<BinClass> labels;  // one per bin

  std::vector<std::size_t> target_bins() const;
  std::vector<std::size_t> interference_bins() const;
  std::size_t count(BinClass c) const;
};

// Classification beamwidth from the localization gap: 60 degrees up to N/5,
// then an exponential descent reaching 60 e^-3 degrees at N/2 and clamped
// there beyond.
double adaptive_beamwidth(double gap, double n_votes, double max_deg = 60.0,
                          double decay = 3.0);

// Residual phase test against the expected phase of theta_hat_b. A bin is
// Target when cos(residual) >= cos(tol) with tol = 2 pi f d / c *
// sin(beamwidth / 2); other valid in-band bins are Interference.
BinPartition classify_bins(const SpectroFrame& frame, double theta_hat_b_deg,
                           double beamwidth_deg, double spacing, double sound_speed,
                           const BandLimits& band = {});

struct BandEnergies {
  double target = 0.0;        // sum over T of |X_1|^2 (first channel)
  double interference = 0.0;  // sum over I of |X_2|^2 (second channel)
};

BandEnergies band_energies(const SpectroFrame& frame, const BinPartition& partition);

inline constexpr double kContrastFloor = 1e-12;

// G'(r) / r for G(r) = r^(2/3), evaluated at r = sqrt(energy):
// 2 / (3 energy^(2/3)), with energy floored at kContrastFloor.
double contrast_weight(double energy);

// Per-bin weighted covariance pair, smoothed across frames with coefficient beta.
struct AuxCovariances {
  std::vector<Hermitian2> v1;
  std::vector<Hermitian2> v2;
  double beta = 0.96;

  static AuxCovariances zeros(std::size_t num_bins, double beta);
};

// V_i <- (1 - beta) w_i x x^H + beta V_i per bin, w_1 = contrast_weight(E_T),
// w_2 = contrast_weight(E_I). The frame's first two channels form x.
AuxCovariances update_covariances(AuxCovariances state, const SpectroFrame& frame,
                                  double e_target, double e_interf);

struct GevSolution {
  Weight2 w{};
  double lambda_max = 0.0;
  bool degenerate = false;
};

// Principal generalized eigenpair of (A, B + eps I), eps = 1e-6 trace(B) / 2
// (1e-12 when the trace vanishes), from the characteristic quadratic.
// A ~ 0 yields w = [1, 0], lambda = 0 and the degenerate flag.
GevSolution solve_gevd(const Hermitian2& a, const Hermitian2& b);

// The regularized B actually used by solve_gevd.
Hermitian2 regularized(const Hermitian2& b);

// Rescales w so that w^H s = 1. Throws Error("target in null space").
Weight2 normalize_distortionless(const Weight2& w, const SteeringVector& s);

struct BeamWeights {
  std::vector<Weight2> w;
  std::vector<double> lambda_max;
};

// y = w^H x per bin on the first two channels; returns one-channel frames.
FrameSequence apply_weights(const FrameSequence& frames, const BeamWeights& weights);

// Frame t uses schedule[min(t, size - 1)].
FrameSequence apply_weight_schedule(const FrameSequence& frames,
                                    const std::vector<BeamWeights>& schedule);

// How the weighted covariances enter the generalized eigenproblem.
//   Literal: maximize w^H V1 w / w^H V2 w.
//   Inverse: maximize w^H V2 w / w^H V1 w. V1 weights frames by the inverse
//     target energy, so this direction is the one that rejects what is
//     present when the target is weak.
enum class GevObjective { Literal, Inverse };

GevObjective parse_objective(const std::string& name);
std::string objective_name(GevObjective objective);

struct MaxSnrConfig {
  double beta = 0.96;
  bool online = false;
  std::optional<double> fixed_beamwidth_deg;
  double edf_max_deg = 60.0;
  double edf_decay = 3.0;
  GevObjective objective = GevObjective::Inverse;
  SslConfig ssl;

  void validate() const;
};

// Where the target is, in the coordinates of the two channels handed to the
// beamformer.
struct TargetModel {
  double theta_b_deg = 0.0;
  double spacing = kDefaultSpacing;
  double sound_speed = kDefaultSoundSpeed;
  // Channels already multiplied by conj(alignment_vector): the target is in
  // phase on both channels with amplitude 1/2 relative to the array center.
  bool center_aligned = false;

  SteeringVector steering(double bin_hz) const;
  double residual_reference_deg() const { return center_aligned ? 0.0 : theta_b_deg; }
};

struct FrameDiagnostics {
  std::size_t frame = 0;
  double doa_deg = 0.0;
  std::size_t gap = 0;
  double beamwidth_deg = 0.0;
  double e_target = 0.0;
  double e_interf = 0.0;
  double lambda_1khz = 0.0;
};

struct BeamformResult {
  FrameSequence output;               // one channel
  std::vector<BeamWeights> weights;   // size 1 offline, one per frame online
  DoaEstimate doa;
  double beamwidth_deg = 0.0;
  std::vector<FrameDiagnostics> diagnostics;
};

// Classification, weighted covariances, GEVD and distortionless scaling for a
// known target direction. doa supplies the gap statistic (and is echoed in
// the result); reported_doa_deg goes into the diagnostics.
BeamformResult beamform_with_doa(const FrameSequence& frames, const TargetModel& target,
                                 const DoaEstimate& doa, double reported_doa_deg,
                                 double gap_votes_total, const MaxSnrConfig& cfg);

// Full dual-channel chain: dual_doa on the frames, then beamform_with_doa.
BeamformResult beamform_pipeline(const FrameSequence& frames, double spacing,
                                 double sound_speed, const MaxSnrConfig& cfg = {});

}  // namespace litebeam
