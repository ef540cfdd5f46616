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

#include "litebeam/eval.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "litebeam/pairsel.hpp"
#include "litebeam/ssl.hpp"

namespace litebeam {

namespace {

// One-sided spectral energy of a mono frame sequence (DC and Nyquist count once,
// the other bins twice), matching the time-domain energy of the windowed frames.
double one_sided_energy(const FrameSequence& frames) {
  double e = 0.0;
  for (const auto& f : frames) {
    const auto& x = f.bins[0];
    for (std::size_t k = 0; k < x.size(); ++k) {
      const bool edge = k == 0 || k + 1 == x.size();
      e += (edge ? 1.0 : 2.0) * std::norm(x[k]);
    }
  }
  return e;
}

bool same_number(double a, double b) { return std::abs(a - b) < 1e-9; }

}  // namespace

ShadowSinr shadow_sinr(const std::vector<BeamWeights>& schedule,
                       const FrameSequence& target_frames,
                       const FrameSequence& interf_frames) {
  if (target_frames.size() != interf_frames.size())
    throw Error("component frame counts differ");
  const double ps = one_sided_energy(apply_weight_schedule(target_frames, schedule));
  const double pv = one_sided_energy(apply_weight_schedule(interf_frames, schedule));
  ShadowSinr out;
  if (pv <= 0.0) {
    out.degenerate = true;
    out.db = ps > 0.0 ? std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.db = 10.0 * std::log10(ps / pv);
  return out;
}

BeamWeights ds_baseline(std::size_t num_bins, double hz_per_bin, const TargetModel& target) {
  BeamWeights bw;
  bw.w.resize(num_bins);
  bw.lambda_max.assign(num_bins, 0.0);
  for (std::size_t k = 0; k < num_bins; ++k) {
    const auto s = target.steering(hz_per_bin * static_cast<double>(k));
    const double n = std::norm(s.entries[0]) + std::norm(s.entries[1]);
    bw.w[k] = {s.entries[0] / n, s.entries[1] / n};
  }
  return bw;
}

std::string method_name(Method m) { return m == Method::MaxSnr ? "maxsnr" : "ds"; }
std::string array_name(ArrayMode a) { return a == ArrayMode::Dual ? "dual" : "circular"; }

Method parse_method(const std::string& name) {
  if (name == "maxsnr") return Method::MaxSnr;
  if (name == "ds") return Method::DelayAndSum;
  throw Error("unknown method '" + name + "'");
}

ArrayMode parse_array_mode(const std::string& name) {
  if (name == "dual") return ArrayMode::Dual;
  if (name == "circular") return ArrayMode::Circular;
  throw Error("unknown array '" + name + "'");
}

ArrayGeometry EvalConfig::geometry() const {
  return make_circular(circular_mics, diameter, sound_speed, MicLabeling::Cyclic);
}

SceneGains evaluate_scene(const ScenePoint& point, const std::vector<Method>& methods,
                          const std::vector<ArrayMode>& arrays, const EvalConfig& cfg) {
  SceneSpec spec;
  spec.geometry = cfg.geometry();
  spec.target = {cfg.target_kind, wrap_degrees(point.source_deg)};
  spec.interferers = {{cfg.interference_kind, wrap_degrees(point.interferer_deg)}};
  spec.diffuse_noise_db = cfg.diffuse_noise_db;
  spec.input_sinr_db = point.input_sinr_db;
  spec.duration_s = cfg.duration_s;
  spec.sample_rate = cfg.sample_rate;
  spec.seed = point.seed;
  const auto scene = render_scene(spec);
  const double input_db = measured_sinr_db(scene);

  const auto mix = stft_padded(scene.mixture, cfg.stft);
  const auto tgt = stft_padded(scene.target_only, cfg.stft);
  const auto itf = stft_padded(scene.interference_plus_noise_only, cfg.stft);
  const auto& geo = spec.geometry;
  const std::size_t bins = cfg.stft.num_bins();
  const double hz = mix.front().hz_per_bin;

  const std::vector<std::size_t> dual_ch = {geo.pairs[0].first, geo.pairs[0].second};
  const double d = geo.pair_spacing(0);

  SceneGains out;
  out.point = point;
  for (auto array : arrays) {
    for (auto method : methods) {
      GainResult g;
      g.input_sinr_db = input_db;
      ShadowSinr shadow;
      if (array == ArrayMode::Dual) {
        const auto m2 = select_channels(mix, dual_ch);
        const auto t2 = select_channels(tgt, dual_ch);
        const auto i2 = select_channels(itf, dual_ch);
        if (method == Method::MaxSnr) {
          const auto res = beamform_pipeline(m2, d, geo.sound_speed, cfg.maxsnr);
          g.doa_deg = res.doa.azimuth_deg;
          shadow = shadow_sinr(res.weights, t2, i2);
        } else {
          const auto doa = dual_doa(m2, d, geo.sound_speed, cfg.maxsnr.ssl);
          g.doa_deg = doa.azimuth_deg;
          const TargetModel model{doa.azimuth_deg, d, geo.sound_speed, false};
          shadow = shadow_sinr({ds_baseline(bins, hz, model)}, t2, i2);
        }
      } else {
        std::vector<BeamWeights> schedule;
        PairChoice pair;
        if (method == Method::MaxSnr) {
          auto res = beamform_circular(mix, geo, cfg.maxsnr);
          g.doa_deg = res.doa.azimuth_deg;
          pair = res.pair;
          schedule = std::move(res.beam.weights);
        } else {
          const auto doa = circular_doa(mix, geo, cfg.maxsnr.ssl);
          g.doa_deg = doa.azimuth_deg;
          pair = select_pair(doa.azimuth_deg, geo);
          schedule = {ds_baseline(bins, hz, aligned_target(geo, pair))};
        }
        g.pair_index = pair.pair_index;
        shadow = shadow_sinr(schedule,
                             align_pair(tgt, pair.pair_index, pair.theta_b_local, geo),
                             align_pair(itf, pair.pair_index, pair.theta_b_local, geo));
      }
      g.degenerate = shadow.degenerate;
      g.output_sinr_db = shadow.db;
      g.gain_db = shadow.db - input_db;
      out.gains.push_back({{method, array}, g});
    }
  }
  return out;
}

GainResult sinr_gain(const ScenePoint& point, Method method, ArrayMode array,
                     const EvalConfig& cfg) {
  return evaluate_scene(point, {method}, {array}, cfg).gains.front().second;
}

const SweepAverage* SinrReport::average(double source_deg, double input_sinr_db, Method m,
                                        ArrayMode a) const {
  for (const auto& avg : averages)
    if (same_number(avg.source_deg, source_deg) && same_number(avg.input_sinr_db, input_sinr_db) &&
        avg.method == m && avg.array == a)
      return &avg;
  return nullptr;
}

const SweepRow* SinrReport::row(double source_deg, double interferer_deg, double input_sinr_db,
                                Method m, ArrayMode a) const {
  for (const auto& r : rows)
    if (same_number(r.source_deg, source_deg) && same_number(r.interferer_deg, interferer_deg) &&
        same_number(r.input_sinr_db, input_sinr_db) && r.method == m && r.array == a)
      return &r;
  return nullptr;
}

SinrReport sweep_table(const std::vector<double>& directions,
                       const std::vector<double>& input_sinrs_db,
                       const std::vector<std::uint64_t>& seeds,
                       const std::vector<Method>& methods, const std::vector<ArrayMode>& arrays,
                       const EvalConfig& cfg) {
  if (directions.size() < 2) throw Error("sweep needs at least two directions");
  if (input_sinrs_db.empty()) throw Error("sweep needs at least one input SINR");
  if (seeds.empty()) throw Error("sweep needs at least one seed");
  if (methods.empty() || arrays.empty()) throw Error("sweep needs a method and an array");

  SinrReport report;
  for (double sinr : input_sinrs_db) {
    for (double src : directions) {
      // rows for this source, indexed like (method, array) loops below
      std::vector<SweepRow> block;
      for (double itf : directions) {
        if (same_number(src, itf)) continue;
        std::vector<SweepRow> rows;
        for (auto array : arrays)
          for (auto method : methods) {
            SweepRow r;
            r.source_deg = src;
            r.interferer_deg = itf;
            r.input_sinr_db = sinr;
            r.method = method;
            r.array = array;
            r.seeds = seeds;
            rows.push_back(r);
          }
        for (auto seed : seeds) {
          const auto scene = evaluate_scene({src, itf, sinr, seed}, methods, arrays, cfg);
          for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i].seed_gains_db.push_back(scene.gains[i].second.gain_db);
        }
        for (auto& r : rows) {
          double sum = 0.0;
          for (double g : r.seed_gains_db) sum += g;
          r.gain_db = sum / static_cast<double>(r.seed_gains_db.size());
          block.push_back(r);
        }
      }
      for (auto array : arrays)
        for (auto method : methods) {
          SweepAverage avg{src, sinr, method, array, 0.0};
          std::size_t n = 0;
          for (const auto& r : block)
            if (r.method == method && r.array == array) {
              avg.gain_db += r.gain_db;
              ++n;
            }
          avg.gain_db /= static_cast<double>(n);
          report.averages.push_back(avg);
        }
      report.rows.insert(report.rows.end(), block.begin(), block.end());
    }
  }
  return report;
}

namespace {

std::string fmt(double v, int precision = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

std::string fmt_angle(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string report_csv(const SinrReport& report) {
  std::ostringstream os;
  os << "source_deg,interferer_deg,input_sinr_db,method,array,gain_db,seed\n";
  const auto seed_list = [](const std::vector<std::uint64_t>& seeds) {
    std::string s;
    for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? ";" : "") + std::to_string(seeds[i]);
    return s;
  };
  for (const auto& r : report.rows)
    os << fmt_angle(r.source_deg) << ',' << fmt_angle(r.interferer_deg) << ','
       << fmt_angle(r.input_sinr_db) << ',' << method_name(r.method) << ',' << array_name(r.array)
       << ',' << fmt(r.gain_db, 4) << ',' << seed_list(r.seeds) << '\n';
  for (const auto& a : report.averages) {
    std::vector<std::uint64_t> seeds;
    for (const auto& r : report.rows)
      if (same_number(r.source_deg, a.source_deg) && r.method == a.method && r.array == a.array) {
        seeds = r.seeds;
        break;
      }
    os << fmt_angle(a.source_deg) << ",avg," << fmt_angle(a.input_sinr_db) << ','
       << method_name(a.method) << ',' << array_name(a.array) << ',' << fmt(a.gain_db, 4) << ','
       << seed_list(seeds) << '\n';
  }
  return os.str();
}

std::string report_markdown(const SinrReport& report) {
  // Distinct (method, input SINR) tables, in first-seen order.
  std::vector<std::pair<Method, double>> tables;
  for (const auto& r : report.rows) {
    bool seen = false;
    for (const auto& t : tables) seen |= t.first == r.method && same_number(t.second, r.input_sinr_db);
    if (!seen) tables.emplace_back(r.method, r.input_sinr_db);
  }
  const auto cell = [](const SweepRow* r) { return r ? fmt(r->gain_db) : std::string("-"); };
  const auto avg_cell = [](const SweepAverage* a) { return a ? fmt(a->gain_db) : std::string("-"); };

  std::ostringstream os;
  for (const auto& [method, sinr] : tables) {
    os << "### SINR gain (dB), method " << method_name(method) << ", input SINR "
       << fmt_angle(sinr) << " dB\n\n";
    os << "| Source | Interferer | Dual | Circular | Averaged (dual vs. circular) |\n";
    os << "|---|---|---|---|---|\n";
    std::vector<double> sources;
    for (const auto& r : report.rows) {
      if (r.method != method || !same_number(r.input_sinr_db, sinr)) continue;
      bool seen = false;
      for (double s : sources) seen |= same_number(s, r.source_deg);
      if (!seen) sources.push_back(r.source_deg);
    }
    for (double src : sources) {
      std::vector<double> itfs;
      for (const auto& r : report.rows) {
        if (r.method != method || !same_number(r.input_sinr_db, sinr) || !same_number(r.source_deg, src))
          continue;
        bool seen = false;
        for (double i : itfs) seen |= same_number(i, r.interferer_deg);
        if (!seen) itfs.push_back(r.interferer_deg);
      }
      for (std::size_t i = 0; i < itfs.size(); ++i) {
        os << "| " << (i == 0 ? fmt_angle(src) + "°" : std::string()) << " | " << fmt_angle(itfs[i])
           << "° | " << cell(report.row(src, itfs[i], sinr, method, ArrayMode::Dual)) << " | "
           << cell(report.row(src, itfs[i], sinr, method, ArrayMode::Circular)) << " | ";
        if (i == 0)
          os << avg_cell(report.average(src, sinr, method, ArrayMode::Dual)) << " vs. "
             << avg_cell(report.average(src, sinr, method, ArrayMode::Circular));
        os << " |\n";
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace litebeam
