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

#include "litebeam/scenesim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "litebeam/fft.hpp"

namespace litebeam {

namespace {

constexpr double kGuardSeconds = 0.1;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::size_t num_samples_for(double duration_s, int sample_rate) {
  if (!(duration_s > 0.0)) throw Error("duration must be positive");
  if (sample_rate <= 0) throw Error("sample_rate must be positive");
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate));
}

void normalize_rms(std::vector<double>& x) {
  const double e = energy(x);
  if (e <= 0.0) return;
  const double g = std::sqrt(static_cast<double>(x.size()) / e);
  for (auto& v : x) v *= g;
}

std::vector<double> gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

// Zeroes every DFT bin outside [low, high] Hz.
void band_limit(std::vector<double>& x, int sample_rate, double low_hz, double high_hz) {
  RealFft fft(x.size());
  std::vector<Complex> spec(fft.num_bins());
  fft.forward(x, spec);
  const double hz = static_cast<double>(sample_rate) / static_cast<double>(x.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double f = hz * static_cast<double>(k);
    if (f < low_hz || f > high_hz) spec[k] = 0.0;
  }
  fft.inverse(spec, x);
}

double channel0_power(const MultichannelSignal& s) {
  return s.num_channels() == 0 ? 0.0 : energy(s.channels[0]);
}

}  // namespace

SourceKind parse_source_kind(const std::string& name) {
  if (name == "white") return SourceKind::White;
  if (name == "tonal") return SourceKind::Tonal;
  if (name == "babble-like" || name == "babble") return SourceKind::BabbleLike;
  if (name == "speech-like" || name == "speech") return SourceKind::SpeechLike;
  throw Error("unknown source kind '" + name + "'");
}

std::string source_kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::White: return "white";
    case SourceKind::Tonal: return "tonal";
    case SourceKind::BabbleLike: return "babble-like";
    case SourceKind::SpeechLike: return "speech-like";
  }
  return "unknown";
}

std::vector<double> gen_interference(SourceKind kind, double duration_s, int sample_rate,
                                     std::uint64_t seed) {
  const std::size_t n = num_samples_for(duration_s, sample_rate);
  auto rng = make_rng(seed, 0x1f);
  switch (kind) {
    case SourceKind::White:
      return gaussian(n, rng);
    case SourceKind::Tonal: {
      std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
      std::vector<double> x(n, 0.0);
      for (double f : kTonalFrequenciesHz) {
        const double ph = phase(rng);
        const double w = 2.0 * kPi * f / sample_rate;
        for (std::size_t i = 0; i < n; ++i) x[i] += std::cos(w * static_cast<double>(i) + ph);
      }
      normalize_rms(x);
      return x;
    }
    case SourceKind::BabbleLike: {
      auto x = gaussian(n, rng);
      band_limit(x, sample_rate, 300.0, 3400.0);
      normalize_rms(x);
      return x;
    }
    case SourceKind::SpeechLike:
      break;
  }
  throw Error("unknown interference kind '" + source_kind_name(kind) + "'");
}

std::vector<double> gen_speech_like(double duration_s, int sample_rate, std::uint64_t seed) {
  const std::size_t n = num_samples_for(duration_s, sample_rate);
  auto rng = make_rng(seed, 0x5e);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto between = [&](double lo, double hi) { return lo + (hi - lo) * uni(rng); };
  const double fs = static_cast<double>(sample_rate);
  const double top_hz = std::min(3400.0, 0.45 * fs);

  auto breath = gaussian(n, rng);
  band_limit(breath, sample_rate, 300.0, top_hz);
  normalize_rms(breath);

  std::vector<double> x(n, 0.0);
  std::size_t cursor = static_cast<std::size_t>(between(0.02, 0.15) * fs);
  while (cursor < n) {
    const std::size_t len = static_cast<std::size_t>(between(0.15, 0.40) * fs);
    const double f0_start = between(100.0, 220.0);
    const double f0_end = f0_start * between(0.85, 1.15);
    const double formants[3] = {between(300.0, 900.0), between(900.0, 2500.0),
                                between(2300.0, 3300.0)};
    const double widths[3] = {between(80.0, 160.0), between(100.0, 220.0), between(150.0, 300.0)};
    const double level = between(0.5, 1.0);
    const std::size_t ramp = static_cast<std::size_t>(0.015 * fs);
    const std::size_t max_harm = static_cast<std::size_t>(top_hz / std::min(f0_start, f0_end));
    std::vector<double> phases(max_harm + 1);
    for (auto& p : phases) p = between(0.0, 2.0 * kPi);

    for (std::size_t i = 0; i < len && cursor + i < n; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(len);
      const double f0 = f0_start + (f0_end - f0_start) * frac;
      double env = level;
      if (i < ramp) env *= 0.5 - 0.5 * std::cos(kPi * static_cast<double>(i) / ramp);
      if (len - i < ramp) env *= 0.5 - 0.5 * std::cos(kPi * static_cast<double>(len - i) / ramp);
      double v = 0.0;
      for (std::size_t h = 1; h <= max_harm; ++h) {
        const double f = f0 * static_cast<double>(h);
        phases[h] += 2.0 * kPi * f / fs;
        if (f > top_hz) continue;
        double a = 0.2;
        for (int m = 0; m < 3; ++m) {
          const double z = (f - formants[m]) / widths[m];
          a += std::exp(-0.5 * z * z) / (1.0 + m);
        }
        v += a * std::cos(phases[h]);
      }
      x[cursor + i] += env * (v + 0.3 * breath[cursor + i]);
    }
    cursor += len + static_cast<std::size_t>(between(0.05, 0.2) * fs);
  }
  // Aspiration noise inside syllables; a faint floor keeps pauses from being
  // digitally silent.
  normalize_rms(x);
  for (std::size_t i = 0; i < n; ++i) x[i] += 0.003 * breath[i];
  normalize_rms(x);
  return x;
}

std::vector<double> gen_source(SourceKind kind, double duration_s, int sample_rate,
                               std::uint64_t seed) {
  if (kind == SourceKind::SpeechLike) return gen_speech_like(duration_s, sample_rate, seed);
  return gen_interference(kind, duration_s, sample_rate, seed);
}

MultichannelSignal render_far_field(const std::vector<double>& source, double azimuth_deg,
                                    const ArrayGeometry& geometry, int sample_rate) {
  geometry.validate();
  if (source.empty()) throw Error("empty source signal");
  for (double v : source)
    if (!std::isfinite(v)) throw Error("source contains non-finite samples");

  const std::size_t n = source.size();
  RealFft fft(n);
  std::vector<Complex> spec(fft.num_bins()), shifted(fft.num_bins());
  fft.forward(source, spec);

  const double az = azimuth_deg * kPi / 180.0;
  const double ux = std::cos(az), uy = std::sin(az);
  const Point2 c = geometry.center();
  const double hz = static_cast<double>(sample_rate) / static_cast<double>(n);

  MultichannelSignal out(geometry.num_mics(), n, sample_rate);
  for (std::size_t m = 0; m < geometry.num_mics(); ++m) {
    const auto& p = geometry.mics[m];
    const double tau = -((p.x - c.x) * ux + (p.y - c.y) * uy) / geometry.sound_speed;
    for (std::size_t k = 0; k < spec.size(); ++k)
      shifted[k] = spec[k] * std::polar(1.0, -2.0 * kPi * hz * static_cast<double>(k) * tau);
    fft.inverse(shifted, out.channels[m]);
  }
  return out;
}

RenderedScene mix_at_sinr(const MultichannelSignal& target,
                          const MultichannelSignal& interference,
                          const MultichannelSignal& noise, double input_sinr_db) {
  const std::size_t chans = target.num_channels(), len = target.num_samples();
  const auto compatible = [&](const MultichannelSignal& s) {
    return s.num_channels() == 0 || (s.num_channels() == chans && s.num_samples() == len);
  };
  if (chans == 0 || !compatible(interference) || !compatible(noise))
    throw Error("scene components differ in channel count or length");

  const double p_target = channel0_power(target);
  const double a = channel0_power(interference);
  const double c = channel0_power(noise);
  if (p_target <= 0.0 || a + c <= 0.0) throw Error("degenerate scene");
  const double wanted = p_target / std::pow(10.0, input_sinr_db / 10.0);

  double g_interf = 0.0, g_noise = 1.0;
  if (a > 0.0) {
    double b = 0.0;
    if (c > 0.0)
      for (std::size_t i = 0; i < len; ++i) b += interference.channels[0][i] * noise.channels[0][i];
    // a g^2 + 2 b g + c = wanted
    const double disc = b * b - a * (c - wanted);
    if (disc < 0.0) throw Error("degenerate scene: noise floor exceeds requested SINR");
    g_interf = (-b + std::sqrt(disc)) / a;
    if (!(g_interf > 0.0)) throw Error("degenerate scene: noise floor exceeds requested SINR");
  } else {
    g_noise = std::sqrt(wanted / c);
  }

  RenderedScene out;
  out.target_only = target;
  out.interference_plus_noise_only = MultichannelSignal(chans, len, target.sample_rate);
  out.mixture = MultichannelSignal(chans, len, target.sample_rate);
  for (std::size_t ch = 0; ch < chans; ++ch) {
    auto& v = out.interference_plus_noise_only.channels[ch];
    for (std::size_t i = 0; i < len; ++i) {
      double s = 0.0;
      if (a > 0.0) s += g_interf * interference.channels[ch][i];
      if (c > 0.0) s += g_noise * noise.channels[ch][i];
      v[i] = s;
      out.mixture.channels[ch][i] = target.channels[ch][i] + s;
    }
  }
  return out;
}

double measured_sinr_db(const RenderedScene& scene) {
  return 10.0 * std::log10(channel0_power(scene.target_only) /
                           channel0_power(scene.interference_plus_noise_only));
}

void SceneSpec::validate() const {
  geometry.validate();
  const auto check_az = [](double az) {
    if (!(az >= 0.0 && az < 360.0)) throw Error("azimuth must lie in [0, 360)");
  };
  check_az(target.azimuth_deg);
  for (const auto& s : interferers) check_az(s.azimuth_deg);
  if (!(duration_s > 0.0)) throw Error("duration_s must be positive");
  if (sample_rate <= 0) throw Error("sample_rate must be positive");
  if (input_sinr_db && interferers.empty() && !std::isfinite(diffuse_noise_db))
    throw Error("a finite input SINR needs interferers or diffuse noise");
}

RenderedScene render_scene(const SceneSpec& spec) {
  spec.validate();
  const std::size_t guard = static_cast<std::size_t>(std::llround(kGuardSeconds * spec.sample_rate));
  const double padded = spec.duration_s + 2.0 * kGuardSeconds;
  const std::size_t len = num_samples_for(spec.duration_s, spec.sample_rate);

  const auto trim = [&](const MultichannelSignal& s) {
    MultichannelSignal t(s.num_channels(), len, s.sample_rate);
    for (std::size_t ch = 0; ch < s.num_channels(); ++ch)
      std::copy_n(s.channels[ch].begin() + static_cast<std::ptrdiff_t>(guard), len,
                  t.channels[ch].begin());
    return t;
  };
  const std::size_t chans = spec.geometry.num_mics();

  const auto target_src = gen_source(spec.target.kind, padded, spec.sample_rate, spec.seed * 7919 + 1);
  const auto target = trim(render_far_field(target_src, spec.target.azimuth_deg, spec.geometry,
                                            spec.sample_rate));

  MultichannelSignal interference;
  for (std::size_t i = 0; i < spec.interferers.size(); ++i) {
    const auto& src = spec.interferers[i];
    const auto raw = gen_source(src.kind, padded, spec.sample_rate, spec.seed * 7919 + 101 + i);
    const auto rendered = trim(render_far_field(raw, src.azimuth_deg, spec.geometry, spec.sample_rate));
    if (interference.num_channels() == 0) {
      interference = rendered;
    } else {
      for (std::size_t ch = 0; ch < chans; ++ch)
        for (std::size_t k = 0; k < len; ++k) interference.channels[ch][k] += rendered.channels[ch][k];
    }
  }

  MultichannelSignal noise;
  if (std::isfinite(spec.diffuse_noise_db)) {
    auto rng = make_rng(spec.seed, 0xd1f);
    noise = MultichannelSignal(chans, len, spec.sample_rate);
    const double level = std::sqrt(channel0_power(target) / static_cast<double>(len) *
                                   std::pow(10.0, spec.diffuse_noise_db / 10.0));
    for (auto& ch : noise.channels) {
      auto w = gaussian(len, rng);
      for (std::size_t k = 0; k < len; ++k) ch[k] = level * w[k];
    }
  }

  if (spec.input_sinr_db) return mix_at_sinr(target, interference, noise, *spec.input_sinr_db);

  RenderedScene out;
  out.target_only = target;
  out.interference_plus_noise_only = MultichannelSignal(chans, len, spec.sample_rate);
  out.mixture = MultichannelSignal(chans, len, spec.sample_rate);
  for (std::size_t ch = 0; ch < chans; ++ch) {
    for (std::size_t k = 0; k < len; ++k) {
      double v = 0.0;
      if (interference.num_channels()) v += interference.channels[ch][k];
      if (noise.num_channels()) v += noise.channels[ch][k];
      out.interference_plus_noise_only.channels[ch][k] = v;
      out.mixture.channels[ch][k] = target.channels[ch][k] + v;
    }
  }
  return out;
}

}  // namespace litebeam
