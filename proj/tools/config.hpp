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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "litebeam/eval.hpp"
#include "litebeam/geometry.hpp"
#include "litebeam/maxsnr.hpp"
#include "litebeam/scenesim.hpp"
#include "litebeam/stft.hpp"
#include "litebeam/wav.hpp"

namespace litebeam::cli {

// Invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::vector<double> directions = {30.0, 60.0, 90.0, 120.0, 150.0};
  std::vector<double> input_sinrs_db = {6.0};
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::vector<Method> methods = {Method::MaxSnr, Method::DelayAndSum};
  std::vector<ArrayMode> arrays = {ArrayMode::Dual, ArrayMode::Circular};
};

struct RunConfig {
  ArrayGeometry geometry = make_dual();
  StftConfig stft;
  MaxSnrConfig maxsnr;
  SceneSpec scene;
  EvalConfig eval;
  SweepSpec sweep;
  std::string input;
  std::string out_dir = ".";
  bool histogram = false;
  WavEncoding wav_encoding = WavEncoding::Float32;
};

// Every key the config file may contain, in documentation order.
const std::vector<std::string>& known_keys();

// Parses a flat JSON object. Missing keys keep their defaults; unknown keys,
// wrong types and out-of-range values raise ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Re-checks cross-field invariants after command-line overrides.
void validate_config(const RunConfig& cfg);

}  // namespace litebeam::cli
