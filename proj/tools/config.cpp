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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace litebeam::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(key, "must be finite");
  return v;
}

long long get_integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "expected an integer");
  return j.get<long long>();
}

std::size_t get_count(const json& j, const std::string& key) {
  const auto v = get_integer(j, key);
  if (v < 0) fail(key, "must be non-negative");
  return static_cast<std::size_t>(v);
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) fail(key, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& key) {
  if (!j.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

template <typename F>
auto with_key(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(key, e.what());
  }
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      // geometry
      "array", "mics", "spacing", "labeling", "sound_speed", "mic_positions", "pairs",
      // analysis
      "fft_size", "hop", "window",
      // localization
      "dual_grid_deg", "circular_grid_deg", "band_low_hz", "band_high_hz",
      "dual_cluster_halfwidth", "circular_cluster_halfwidth",
      // beamformer
      "beta", "online", "fixed_beamwidth_deg", "edf_max_deg", "edf_decay", "objective",
      // scene
      "target_kind", "target_azimuth_deg", "interferers", "diffuse_noise_db", "input_sinr_db",
      "duration_s", "sample_rate", "seed",
      // sweep
      "directions", "input_sinrs_db", "seeds", "methods", "arrays", "interference_kind",
      // io
      "input", "out", "histogram", "wav_encoding"};
  return keys;
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  const auto& keys = known_keys();
  for (auto it = root.begin(); it != root.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      fail(it.key(), "unknown key");

  const auto has = [&](const char* k) { return root.contains(k); };
  RunConfig cfg;

  // Geometry.
  std::string array = has("array") ? get_string(root["array"], "array") : "dual";
  if (array != "dual" && array != "circular") fail("array", "expected \"dual\" or \"circular\"");
  const double spacing = has("spacing") ? get_number(root["spacing"], "spacing") : kDefaultSpacing;
  if (!(spacing > 0.0)) fail("spacing", "must be positive");
  const double c = has("sound_speed") ? get_number(root["sound_speed"], "sound_speed")
                                      : kDefaultSoundSpeed;
  if (!(c > 0.0)) fail("sound_speed", "must be positive");
  const long long mics = has("mics") ? get_integer(root["mics"], "mics") : (array == "dual" ? 2 : 6);
  MicLabeling labeling = MicLabeling::Cyclic;
  if (has("labeling"))
    labeling = with_key("labeling", [&] { return parse_labeling(get_string(root["labeling"], "labeling")); });

  if (has("mic_positions")) {
    const auto& mp = root["mic_positions"];
    if (!mp.is_array()) fail("mic_positions", "expected an array of [x, y] pairs");
    ArrayGeometry g;
    g.kind = array == "dual" ? ArrayKind::Dual : ArrayKind::Circular;
    g.sound_speed = c;
    for (const auto& p : mp) {
      if (!p.is_array() || p.size() != 2) fail("mic_positions", "expected [x, y] entries");
      g.mics.push_back({get_number(p[0], "mic_positions"), get_number(p[1], "mic_positions")});
    }
    if (has("pairs")) {
      const auto& pj = root["pairs"];
      if (!pj.is_array()) fail("pairs", "expected an array of [i, j] index pairs");
      for (const auto& p : pj) {
        if (!p.is_array() || p.size() != 2) fail("pairs", "expected [i, j] entries");
        g.pairs.push_back({get_count(p[0], "pairs"), get_count(p[1], "pairs")});
      }
    } else if (g.kind == ArrayKind::Dual) {
      g.pairs = {{0, 1}};
    } else {
      const std::size_t half = g.mics.size() / 2;
      for (std::size_t k = 0; k < half; ++k) g.pairs.push_back({k, k + half});
    }
    with_key("mic_positions", [&] { g.validate(); });
    cfg.geometry = g;
  } else if (array == "dual") {
    if (mics != 2) fail("mics", "a dual array has exactly 2 microphones");
    cfg.geometry = make_dual(spacing, c);
  } else {
    if (mics < 4 || mics % 2 != 0) fail("mics", "a circular array needs an even count >= 4");
    cfg.geometry = make_circular(static_cast<std::size_t>(mics), spacing, c, labeling);
  }
  if (has("pairs") && !has("mic_positions")) fail("pairs", "only valid together with mic_positions");

  // Analysis.
  if (has("fft_size")) cfg.stft.fft_size = get_count(root["fft_size"], "fft_size");
  if (has("hop")) cfg.stft.hop = get_count(root["hop"], "hop");
  if (has("window"))
    cfg.stft.window = with_key("window", [&] { return parse_window(get_string(root["window"], "window")); });
  with_key("fft_size/hop/window", [&] { cfg.stft.validate(); });

  // Localization.
  auto& ssl = cfg.maxsnr.ssl;
  if (has("dual_grid_deg")) ssl.dual_grid_deg = get_number(root["dual_grid_deg"], "dual_grid_deg");
  if (!(ssl.dual_grid_deg > 0.0 && ssl.dual_grid_deg <= 90.0)) fail("dual_grid_deg", "must lie in (0, 90]");
  if (has("circular_grid_deg"))
    ssl.circular_grid_deg = get_number(root["circular_grid_deg"], "circular_grid_deg");
  if (!(ssl.circular_grid_deg > 0.0 && ssl.circular_grid_deg <= 90.0))
    fail("circular_grid_deg", "must lie in (0, 90]");
  if (has("band_low_hz")) ssl.band.low_hz = get_number(root["band_low_hz"], "band_low_hz");
  if (has("band_high_hz")) ssl.band.high_hz = get_number(root["band_high_hz"], "band_high_hz");
  if (!(ssl.band.low_hz >= 0.0)) fail("band_low_hz", "must be non-negative");
  if (!(ssl.band.high_hz > ssl.band.low_hz)) fail("band_high_hz", "must exceed band_low_hz");
  if (has("dual_cluster_halfwidth"))
    ssl.dual_cluster_halfwidth = get_count(root["dual_cluster_halfwidth"], "dual_cluster_halfwidth");
  if (has("circular_cluster_halfwidth"))
    ssl.circular_cluster_halfwidth =
        get_count(root["circular_cluster_halfwidth"], "circular_cluster_halfwidth");

  // Beamformer.
  auto& ms = cfg.maxsnr;
  if (has("beta")) ms.beta = get_number(root["beta"], "beta");
  if (!(ms.beta >= 0.0 && ms.beta <= 1.0)) fail("beta", "must lie in [0, 1]");
  if (has("online")) ms.online = get_bool(root["online"], "online");
  if (has("fixed_beamwidth_deg") && !root["fixed_beamwidth_deg"].is_null()) {
    ms.fixed_beamwidth_deg = get_number(root["fixed_beamwidth_deg"], "fixed_beamwidth_deg");
    if (!(*ms.fixed_beamwidth_deg > 0.0 && *ms.fixed_beamwidth_deg <= 180.0))
      fail("fixed_beamwidth_deg", "must lie in (0, 180]");
  }
  if (has("edf_max_deg")) ms.edf_max_deg = get_number(root["edf_max_deg"], "edf_max_deg");
  if (!(ms.edf_max_deg > 0.0 && ms.edf_max_deg <= 180.0)) fail("edf_max_deg", "must lie in (0, 180]");
  if (has("edf_decay")) ms.edf_decay = get_number(root["edf_decay"], "edf_decay");
  if (!(ms.edf_decay > 0.0)) fail("edf_decay", "must be positive");
  if (has("objective"))
    ms.objective = with_key("objective", [&] { return parse_objective(get_string(root["objective"], "objective")); });

  // Scene.
  auto& sc = cfg.scene;
  sc.geometry = cfg.geometry;
  if (has("target_kind"))
    sc.target.kind = with_key("target_kind", [&] { return parse_source_kind(get_string(root["target_kind"], "target_kind")); });
  if (has("target_azimuth_deg"))
    sc.target.azimuth_deg = get_number(root["target_azimuth_deg"], "target_azimuth_deg");
  if (!(sc.target.azimuth_deg >= 0.0 && sc.target.azimuth_deg < 360.0))
    fail("target_azimuth_deg", "must lie in [0, 360)");
  if (has("interferers")) {
    const auto& ij = root["interferers"];
    if (!ij.is_array()) fail("interferers", "expected an array of {kind, azimuth_deg} objects");
    for (const auto& e : ij) {
      if (!e.is_object() || !e.contains("kind") || !e.contains("azimuth_deg") || e.size() != 2)
        fail("interferers", "each entry needs exactly the keys kind and azimuth_deg");
      SourceSpec s;
      s.kind = with_key("interferers", [&] { return parse_source_kind(get_string(e["kind"], "interferers")); });
      s.azimuth_deg = get_number(e["azimuth_deg"], "interferers");
      if (!(s.azimuth_deg >= 0.0 && s.azimuth_deg < 360.0)) fail("interferers", "azimuth_deg must lie in [0, 360)");
      sc.interferers.push_back(s);
    }
  }
  if (has("diffuse_noise_db")) {
    if (root["diffuse_noise_db"].is_null())
      sc.diffuse_noise_db = -std::numeric_limits<double>::infinity();
    else
      sc.diffuse_noise_db = get_number(root["diffuse_noise_db"], "diffuse_noise_db");
  }
  if (has("input_sinr_db")) {
    if (root["input_sinr_db"].is_null())
      sc.input_sinr_db.reset();
    else
      sc.input_sinr_db = get_number(root["input_sinr_db"], "input_sinr_db");
  }
  if (has("duration_s")) sc.duration_s = get_number(root["duration_s"], "duration_s");
  if (!(sc.duration_s > 0.0)) fail("duration_s", "must be positive");
  if (has("sample_rate")) {
    const auto sr = get_integer(root["sample_rate"], "sample_rate");
    if (sr <= 0 || sr > 1'000'000) fail("sample_rate", "must lie in (0, 1000000]");
    sc.sample_rate = static_cast<int>(sr);
  }
  if (has("seed")) sc.seed = get_count(root["seed"], "seed");

  // Sweep.
  auto& sw = cfg.sweep;
  if (has("directions")) sw.directions = get_numbers(root["directions"], "directions");
  if (has("input_sinrs_db")) sw.input_sinrs_db = get_numbers(root["input_sinrs_db"], "input_sinrs_db");
  if (has("seeds")) {
    const auto& sj = root["seeds"];
    if (!sj.is_array()) fail("seeds", "expected an array of integers");
    sw.seeds.clear();
    for (const auto& v : sj) sw.seeds.push_back(get_count(v, "seeds"));
  }
  if (has("methods")) {
    const auto& mj = root["methods"];
    if (!mj.is_array()) fail("methods", "expected an array of strings");
    sw.methods.clear();
    for (const auto& v : mj)
      sw.methods.push_back(with_key("methods", [&] { return parse_method(get_string(v, "methods")); }));
  }
  if (has("arrays")) {
    const auto& aj = root["arrays"];
    if (!aj.is_array()) fail("arrays", "expected an array of strings");
    sw.arrays.clear();
    for (const auto& v : aj)
      sw.arrays.push_back(with_key("arrays", [&] { return parse_array_mode(get_string(v, "arrays")); }));
  }
  auto& ev = cfg.eval;
  ev.stft = cfg.stft;
  ev.maxsnr = cfg.maxsnr;
  ev.circular_mics = array == "circular" && !has("mic_positions") ? static_cast<std::size_t>(mics) : 6;
  ev.diameter = spacing;
  ev.sound_speed = c;
  ev.target_kind = sc.target.kind;
  if (has("interference_kind"))
    ev.interference_kind = with_key("interference_kind", [&] {
      return parse_source_kind(get_string(root["interference_kind"], "interference_kind"));
    });
  ev.diffuse_noise_db = sc.diffuse_noise_db;
  ev.duration_s = sc.duration_s;
  ev.sample_rate = sc.sample_rate;

  // Input/output.
  if (has("input")) cfg.input = get_string(root["input"], "input");
  if (has("out")) cfg.out_dir = get_string(root["out"], "out");
  if (has("histogram")) cfg.histogram = get_bool(root["histogram"], "histogram");
  if (has("wav_encoding")) {
    const auto e = get_string(root["wav_encoding"], "wav_encoding");
    if (e == "float32")
      cfg.wav_encoding = WavEncoding::Float32;
    else if (e == "pcm16")
      cfg.wav_encoding = WavEncoding::Pcm16;
    else
      fail("wav_encoding", "expected \"float32\" or \"pcm16\"");
  }

  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& cfg) {
  with_key("array", [&] { cfg.geometry.validate(); });
  with_key("scene", [&] { cfg.scene.validate(); });
  with_key("beta", [&] { cfg.maxsnr.validate(); });
  if (cfg.sweep.seeds.empty()) fail("seeds", "needs at least one seed");
  if (cfg.sweep.methods.empty()) fail("methods", "needs at least one method");
  if (cfg.sweep.arrays.empty()) fail("arrays", "needs at least one array");
  if (cfg.out_dir.empty()) fail("out", "must not be empty");
}

}  // namespace litebeam::cli
