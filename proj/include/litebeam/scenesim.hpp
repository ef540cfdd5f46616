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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "litebeam/geometry.hpp"
#include "litebeam/signal.hpp"

namespace litebeam {

enum class SourceKind { White, Tonal, BabbleLike, SpeechLike };

SourceKind parse_source_kind(const std::string& name);
std::string source_kind_name(SourceKind kind);

// Frequencies of the tonal interference. They sit on the 512-point / 16 kHz
// STFT grid (bins 14, 22, 35, 48, 61).
inline constexpr double kTonalFrequenciesHz[5] = {437.5, 687.5, 1093.75, 1500.0, 1906.25};

// Interference generators.
//   White: unit-variance Gaussian.
//   Tonal: five equal-amplitude sinusoids at kTonalFrequenciesHz, seeded phases.
//   BabbleLike: Gaussian noise band-limited to 300-3400 Hz.
// Throws Error for non-positive duration or SpeechLike (use gen_speech_like).
std::vector<double> gen_interference(SourceKind kind, double duration_s, int sample_rate,
                                     std::uint64_t seed);

// Synthetic talker: voiced syllables (harmonics of a gliding pitch shaped by
// random formants) separated by pauses. Used as target material.
std::vector<double> gen_speech_like(double duration_s, int sample_rate, std::uint64_t seed);

// Any SourceKind, dispatching to the generators above.
std::vector<double> gen_source(SourceKind kind, double duration_s, int sample_rate,
                               std::uint64_t seed);

// Anechoic far-field rendering. Channel n is the source delayed by
// tau_n = -((p_n - center) . u) / c, u the unit vector towards the source,
// realized as a phase ramp on the full-length DFT (circular delay).
MultichannelSignal render_far_field(const std::vector<double>& source, double azimuth_deg,
                                    const ArrayGeometry& geometry, int sample_rate);

struct RenderedScene {
  MultichannelSignal mixture;
  MultichannelSignal target_only;
  MultichannelSignal interference_plus_noise_only;
};

// Scales the directional interference so that the channel-0 SINR of
// target / (interference + noise) equals input_sinr_db. The noise keeps its
// level unless the interference is empty, in which case the noise is scaled.
// Either of interference/noise may have zero channels. Throws
// Error("degenerate scene") on zero-power components or an unreachable SINR.
RenderedScene mix_at_sinr(const MultichannelSignal& target,
                          const MultichannelSignal& interference,
                          const MultichannelSignal& noise, double input_sinr_db);

// Channel-0 SINR of a rendered scene in dB.
double measured_sinr_db(const RenderedScene& scene);

struct SourceSpec {
  SourceKind kind = SourceKind::SpeechLike;
  double azimuth_deg = 90.0;
};

struct SceneSpec {
  ArrayGeometry geometry = make_dual();
  SourceSpec target;
  std::vector<SourceSpec> interferers;
  double diffuse_noise_db = -30.0;  // per-channel white noise relative to target
  std::optional<double> input_sinr_db = 6.0;
  double duration_s = 3.0;
  int sample_rate = 16000;
  std::uint64_t seed = 1;

  void validate() const;
};

// Generates, renders and mixes a scene. Sources are generated with a 100 ms
// guard on both sides which is trimmed after rendering.
RenderedScene render_scene(const SceneSpec& spec);

}  // namespace litebeam
