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
#include <string>
#include <vector>

#include "litebeam/geometry.hpp"
#include "litebeam/maxsnr.hpp"
#include "litebeam/scenesim.hpp"
#include "litebeam/stft.hpp"

namespace litebeam {

struct ShadowSinr {
  double db = 0.0;
  bool degenerate = false;  // no filtered interference (+inf) or 0/0
};

// Applies the same weights to the target-only and interference+noise-only
// frames and returns 10 log10 of the output power ratio (one-sided spectra).
ShadowSinr shadow_sinr(const std::vector<BeamWeights>& schedule,
                       const FrameSequence& target_frames,
                       const FrameSequence& interf_frames);

// s / |s|^2 at every bin: distortionless towards the model, no adaptation.
BeamWeights ds_baseline(std::size_t num_bins, double hz_per_bin, const TargetModel& target);

enum class Method { MaxSnr, DelayAndSum };
enum class ArrayMode { Dual, Circular };

std::string method_name(Method m);
std::string array_name(ArrayMode a);
Method parse_method(const std::string& name);
ArrayMode parse_array_mode(const std::string& name);

// Shared settings for the evaluation harness. Scenes are rendered on a
// circular array; the dual comparator uses its pair (#1, #4), i.e. the first
// pair of the cyclic labeling, whose broadside is at 90 degrees.
struct EvalConfig {
  StftConfig stft;
  MaxSnrConfig maxsnr;
  std::size_t circular_mics = 6;
  double diameter = kDefaultSpacing;
  double sound_speed = kDefaultSoundSpeed;
  SourceKind target_kind = SourceKind::SpeechLike;
  SourceKind interference_kind = SourceKind::SpeechLike;  // a competing talker
  double diffuse_noise_db = -30.0;
  double duration_s = 3.0;
  int sample_rate = 16000;

  ArrayGeometry geometry() const;
};

struct ScenePoint {
  double source_deg = 90.0;
  double interferer_deg = 30.0;
  double input_sinr_db = 6.0;
  std::uint64_t seed = 1;
};

struct GainResult {
  double gain_db = 0.0;
  double input_sinr_db = 0.0;   // measured on channel 0
  double output_sinr_db = 0.0;
  bool degenerate = false;
  double doa_deg = 0.0;         // dual: broadside-local; circular: global
  std::size_t pair_index = 0;
};

GainResult sinr_gain(const ScenePoint& point, Method method, ArrayMode array,
                     const EvalConfig& cfg);

// Gains of every (method, array) combination on one rendered scene.
struct SceneGains {
  ScenePoint point;
  std::vector<std::pair<std::pair<Method, ArrayMode>, GainResult>> gains;
};
SceneGains evaluate_scene(const ScenePoint& point, const std::vector<Method>& methods,
                          const std::vector<ArrayMode>& arrays, const EvalConfig& cfg);

struct SweepRow {
  double source_deg = 0.0;
  double interferer_deg = 0.0;
  double input_sinr_db = 0.0;
  Method method = Method::MaxSnr;
  ArrayMode array = ArrayMode::Dual;
  std::vector<std::uint64_t> seeds;
  std::vector<double> seed_gains_db;
  double gain_db = 0.0;  // mean over seeds
};

struct SweepAverage {
  double source_deg = 0.0;
  double input_sinr_db = 0.0;
  Method method = Method::MaxSnr;
  ArrayMode array = ArrayMode::Dual;
  double gain_db = 0.0;  // mean of the source's rows
};

struct SinrReport {
  std::vector<SweepRow> rows;
  std::vector<SweepAverage> averages;

  const SweepAverage* average(double source_deg, double input_sinr_db, Method m,
                              ArrayMode a) const;
  const SweepRow* row(double source_deg, double interferer_deg, double input_sinr_db,
                      Method m, ArrayMode a) const;
};

// One row per ordered (source, interferer) pair with source != interferer,
// for every input SINR, method and array; per-source averages over the
// interferer positions. Throws Error with fewer than two directions.
SinrReport sweep_table(const std::vector<double>& directions,
                       const std::vector<double>& input_sinrs_db,
                       const std::vector<std::uint64_t>& seeds,
                       const std::vector<Method>& methods, const std::vector<ArrayMode>& arrays,
                       const EvalConfig& cfg);

// CSV with header source_deg,interferer_deg,input_sinr_db,method,array,gain_db,seed.
// Average rows carry interferer_deg = "avg"; seed lists are ';'-joined.
std::string report_csv(const SinrReport& report);

// Table laid out as Source | Interferer | Dual | Circular | Averaged, one
// block per source direction, one table per (method, input SINR).
std::string report_markdown(const SinrReport& report);

}  // namespace litebeam
