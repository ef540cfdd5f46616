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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "litebeam/eval.hpp"
#include "litebeam/maxsnr.hpp"
#include "litebeam/pairsel.hpp"
#include "litebeam/scenesim.hpp"
#include "litebeam/ssl.hpp"
#include "litebeam/stft.hpp"
#include "litebeam/wav.hpp"

namespace fs = std::filesystem;
using namespace litebeam;
using litebeam::cli::ConfigError;
using litebeam::cli::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> input;
  bool histogram = false;
};

RunConfig resolve(const CommonOptions& opt) {
  RunConfig cfg = opt.config_path.empty() ? cli::parse_config("{}") : cli::load_config(opt.config_path);
  if (opt.seed) {
    cfg.scene.seed = *opt.seed;
    cfg.sweep.seeds = {*opt.seed};
  }
  if (opt.out) cfg.out_dir = *opt.out;
  if (opt.input) cfg.input = *opt.input;
  if (opt.histogram) cfg.histogram = true;
  cli::validate_config(cfg);
  return cfg;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

fs::path prepare_out(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

MultichannelSignal read_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("input: no input WAV given");
  auto sig = read_wav(cfg.input);
  if (sig.num_channels() != cfg.geometry.num_mics())
    throw Error("channel mismatch: '" + cfg.input + "' has " + std::to_string(sig.num_channels()) +
                " channels, the configured array has " + std::to_string(cfg.geometry.num_mics()));
  return sig;
}

// 1-based microphone numbers of a pair, e.g. "3-4".
std::string pair_label(const ArrayGeometry& g, std::size_t pair) {
  return std::to_string(g.pairs[pair].first + 1) + "-" + std::to_string(g.pairs[pair].second + 1);
}

int cmd_simulate(const RunConfig& cfg) {
  const auto scene = render_scene(cfg.scene);
  const auto dir = prepare_out(cfg);
  write_wav((dir / "mixture.wav").string(), scene.mixture, cfg.wav_encoding);
  write_wav((dir / "target.wav").string(), scene.target_only, cfg.wav_encoding);
  write_wav((dir / "interference.wav").string(), scene.interference_plus_noise_only,
            cfg.wav_encoding);

  nlohmann::ordered_json m;
  const auto& g = cfg.scene.geometry;
  m["array"] = g.kind == ArrayKind::Dual ? "dual" : "circular";
  m["sound_speed"] = g.sound_speed;
  for (const auto& p : g.mics) m["mic_positions"].push_back({p.x, p.y});
  for (const auto& p : g.pairs) m["pairs"].push_back({p.first, p.second});
  m["target"] = {{"kind", source_kind_name(cfg.scene.target.kind)},
                 {"azimuth_deg", cfg.scene.target.azimuth_deg}};
  m["interferers"] = nlohmann::ordered_json::array();
  for (const auto& s : cfg.scene.interferers)
    m["interferers"].push_back({{"kind", source_kind_name(s.kind)}, {"azimuth_deg", s.azimuth_deg}});
  if (std::isfinite(cfg.scene.diffuse_noise_db))
    m["diffuse_noise_db"] = cfg.scene.diffuse_noise_db;
  else
    m["diffuse_noise_db"] = nullptr;
  if (cfg.scene.input_sinr_db)
    m["input_sinr_db"] = *cfg.scene.input_sinr_db;
  else
    m["input_sinr_db"] = nullptr;
  const double measured = measured_sinr_db(scene);
  if (std::isfinite(measured))
    m["measured_sinr_db"] = measured;
  else
    m["measured_sinr_db"] = nullptr;
  m["duration_s"] = cfg.scene.duration_s;
  m["sample_rate"] = cfg.scene.sample_rate;
  m["num_samples"] = scene.mixture.num_samples();
  m["num_channels"] = scene.mixture.num_channels();
  m["seed"] = cfg.scene.seed;
  m["files"] = {{"mixture", "mixture.wav"},
                {"target", "target.wav"},
                {"interference", "interference.wav"}};
  write_text_atomic(dir / "manifest.json", m.dump(2) + "\n");
  std::cout << "wrote " << (dir / "mixture.wav").string() << ", target.wav, interference.wav, "
            << "manifest.json (" << scene.mixture.num_channels() << " channels, "
            << scene.mixture.num_samples() << " samples)\n";
  return kExitOk;
}

int cmd_localize(const RunConfig& cfg) {
  const auto sig = read_input(cfg);
  const auto frames = stft(sig, cfg.stft);
  const auto& g = cfg.geometry;
  const DoaEstimate doa =
      g.kind == ArrayKind::Dual
          ? dual_doa(frames, g.pair_spacing(0), g.sound_speed, cfg.maxsnr.ssl, g.pairs[0].first,
                     g.pairs[0].second)
          : circular_doa(frames, g, cfg.maxsnr.ssl);
  std::cout << "azimuth_deg,peak_count,second_count,gap,n_votes\n"
            << num(doa.azimuth_deg) << ',' << doa.peak_count << ',' << doa.second_count << ','
            << doa.gap << ',' << doa.n_votes << '\n';
  if (cfg.histogram) {
    std::ostringstream os;
    os << "angle_deg,count\n";
    for (std::size_t i = 0; i < doa.histogram.size(); ++i)
      os << num(doa.cell_center(i)) << ',' << doa.histogram[i] << '\n';
    write_text_atomic(prepare_out(cfg) / "histogram.csv", os.str());
  }
  return kExitOk;
}

int cmd_beamform(const RunConfig& cfg) {
  const auto sig = read_input(cfg);
  const auto frames = stft(sig, cfg.stft);
  const auto& g = cfg.geometry;
  BeamformResult beam;
  std::string pair = pair_label(g, 0);
  if (g.kind == ArrayKind::Dual) {
    const auto two = select_channels(frames, {g.pairs[0].first, g.pairs[0].second});
    beam = beamform_pipeline(two, g.pair_spacing(0), g.sound_speed, cfg.maxsnr);
  } else {
    auto res = beamform_circular(frames, g, cfg.maxsnr);
    pair = pair_label(g, res.pair.pair_index);
    beam = std::move(res.beam);
  }

  auto y = istft(beam.output, cfg.stft, 0);
  y.resize(sig.num_samples(), 0.0);
  MultichannelSignal out(1, 0, sig.sample_rate);
  out.channels[0] = std::move(y);
  const auto dir = prepare_out(cfg);
  write_wav((dir / "enhanced.wav").string(), out, cfg.wav_encoding);

  std::ostringstream os;
  os << "frame,doa_deg,gap,beamwidth_deg,e_target,e_interf,lambda_1khz,selected_pair\n";
  for (const auto& d : beam.diagnostics)
    os << d.frame << ',' << num(d.doa_deg) << ',' << d.gap << ',' << num(d.beamwidth_deg) << ','
       << num(d.e_target) << ',' << num(d.e_interf) << ',' << num(d.lambda_1khz) << ',' << pair
       << '\n';
  write_text_atomic(dir / "diagnostics.csv", os.str());
  const double doa = beam.diagnostics.empty() ? 0.0 : beam.diagnostics.front().doa_deg;
  std::cout << "doa_deg=" << num(doa) << " selected_pair=" << pair
            << " beamwidth_deg=" << num(beam.beamwidth_deg) << " wrote "
            << (dir / "enhanced.wav").string() << '\n';
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  if (cfg.sweep.directions.size() < 2) throw ConfigError("directions: needs at least two directions");
  if (cfg.sweep.input_sinrs_db.empty()) throw ConfigError("input_sinrs_db: needs at least one value");
  const auto report = sweep_table(cfg.sweep.directions, cfg.sweep.input_sinrs_db, cfg.sweep.seeds,
                                  cfg.sweep.methods, cfg.sweep.arrays, cfg.eval);
  const auto dir = prepare_out(cfg);
  write_text_atomic(dir / "report.csv", report_csv(report));
  write_text_atomic(dir / "report.md", report_markdown(report));
  std::cout << report.rows.size() << " rows, " << report.averages.size() << " averages; wrote "
            << (dir / "report.csv").string() << " and report.md\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"litebeam: two-microphone maximum-SNR beamforming toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Flat JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "Seed (overrides the config's seed and seeds)");
    sub->add_option("--out", opt.out, "Output directory (overrides the config's out)");
  };
  auto* simulate = app.add_subcommand("simulate", "Render a scene to mixture/target/interference WAVs");
  auto* localize = app.add_subcommand("localize", "Estimate the source direction of a WAV");
  auto* beamform = app.add_subcommand("beamform", "Enhance a WAV with the maximum-SNR beamformer");
  auto* evaluate = app.add_subcommand("evaluate", "Run the SINR-gain sweep and write reports");
  for (auto* sub : {simulate, localize, beamform, evaluate}) add_common(sub);
  for (auto* sub : {localize, beamform})
    sub->add_option("input", opt.input, "Input WAV (overrides the config's input)");
  localize->add_flag("--histogram", opt.histogram, "Also write histogram.csv to the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig cfg = resolve(opt);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (localize->parsed()) return cmd_localize(cfg);
    if (beamform->parsed()) return cmd_beamform(cfg);
    return cmd_evaluate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
