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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "litebeam/maxsnr.hpp"
#include "litebeam/scenesim.hpp"
#include "litebeam/stft.hpp"
#include "oracles.hpp"

using namespace litebeam;

namespace {

oracle::M2 to_dense(const Hermitian2& h) {
  oracle::M2 m{};
  m[0][0] = h.a;
  m[0][1] = h.b;
  m[1][0] = std::conj(h.b);
  m[1][1] = h.d;
  return m;
}

Hermitian2 from_dense(const oracle::M2& m) { return {m[0][0].real(), m[0][1], m[1][1].real()}; }

SpectroFrame frame_of(std::vector<Complex> ch0, std::vector<Complex> ch1, double hz_per_bin = 31.25) {
  SpectroFrame f;
  f.bins = {std::move(ch0), std::move(ch1)};
  f.hz_per_bin = hz_per_bin;
  return f;
}

FrameSequence render_frames(const std::vector<double>& src, double az) {
  return stft(render_far_field(src, az, make_dual(), 16000), StftConfig{});
}

double correlation(const std::vector<double>& a, const std::vector<double>& b, std::size_t lo,
                   std::size_t hi) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

}  // namespace

TEST_SUITE("maxsnr") {

TEST_CASE("adaptive beamwidth endpoints and clamps") {
  const double n = 1000.0;
  CHECK(adaptive_beamwidth(n / 5.0, n) == doctest::Approx(60.0));
  CHECK(adaptive_beamwidth(n / 2.0, n) == doctest::Approx(60.0 * std::exp(-3.0)));
  CHECK(adaptive_beamwidth(n / 2.0, n) == doctest::Approx(2.99).epsilon(1e-3));
  CHECK(adaptive_beamwidth(0.0, n) == doctest::Approx(60.0));
  CHECK(adaptive_beamwidth(n, n) == doctest::Approx(60.0 * std::exp(-3.0)));
  double prev = 1e9;
  for (double g = 0.0; g <= n; g += 10.0) {
    const double bw = adaptive_beamwidth(g, n);
    CHECK(bw <= prev + 1e-12);
    prev = bw;
  }
}

TEST_CASE("band energies") {
  const std::vector<Complex> zeros(4);
  BinPartition all;
  all.labels.assign(4, BinClass::Target);
  const auto z = band_energies(frame_of(zeros, zeros), all);
  CHECK(z.target == 0.0);
  CHECK(z.interference == 0.0);

  const std::vector<Complex> x1{Complex(1, 0), Complex(0, std::sqrt(2.0)), Complex(std::sqrt(3.0), 0), Complex(0, 2)};
  const std::vector<Complex> x2{Complex(5, 0), Complex(1, 1), Complex(0, 0), Complex(2, 0)};
  const auto f = frame_of(x1, x2);
  const auto e_all = band_energies(f, all);
  CHECK(e_all.target == doctest::Approx(10.0));
  CHECK(e_all.interference == 0.0);

  BinPartition part;
  part.labels = {BinClass::Target, BinClass::Interference, BinClass::Target, BinClass::Excluded};
  const auto e = band_energies(f, part);
  CHECK(e.target == doctest::Approx(4.0));
  CHECK(e.interference == doctest::Approx(2.0));
}

TEST_CASE("contrast weight values and monotonicity") {
  CHECK(contrast_weight(1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(contrast_weight(64.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  const double floor_value = 2.0 / (3.0 * std::pow(kContrastFloor, 2.0 / 3.0));
  CHECK(contrast_weight(0.0) == doctest::Approx(floor_value));
  CHECK(std::isfinite(contrast_weight(0.0)));
  double prev = contrast_weight(kContrastFloor);
  for (double e = 2e-12; e < 1e8; e *= 1.7) {
    const double w = contrast_weight(e);
    CHECK(w < prev);
    prev = w;
  }
  CHECK_THROWS_AS(contrast_weight(-1.0), Error);
}

TEST_CASE("covariance smoothing endpoints") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> a(3), b(3);
  for (std::size_t k = 0; k < 3; ++k) {
    a[k] = Complex(n(rng), n(rng));
    b[k] = Complex(n(rng), n(rng));
  }
  const auto f = frame_of(a, b);
  AuxCovariances prev = AuxCovariances::zeros(3, 0.0);
  for (std::size_t k = 0; k < 3; ++k) {
    prev.v1[k] = {2.0, Complex(0.3, -0.1), 1.0};
    prev.v2[k] = {4.0, Complex(-1.0, 0.2), 3.0};
  }
  const double et = 2.5, ei = 0.7;

  auto s0 = prev;
  s0.beta = 0.0;
  s0 = update_covariances(s0, f, et, ei);
  for (std::size_t k = 0; k < 3; ++k) {
    const double w1 = 2.0 / (3.0 * std::pow(et, 2.0 / 3.0));
    const double w2 = 2.0 / (3.0 * std::pow(ei, 2.0 / 3.0));
    CHECK(s0.v1[k].a == doctest::Approx(w1 * std::norm(a[k])));
    CHECK(std::abs(s0.v1[k].b - w1 * a[k] * std::conj(b[k])) < 1e-12);
    CHECK(s0.v2[k].d == doctest::Approx(w2 * std::norm(b[k])));
  }

  auto s1 = prev;
  s1.beta = 1.0;
  s1 = update_covariances(s1, f, et, ei);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(s1.v1[k].a == prev.v1[k].a);
    CHECK(s1.v1[k].b == prev.v1[k].b);
    CHECK(s1.v2[k].d == prev.v2[k].d);
  }

  // Scalar analogue: previous 4, instantaneous 2, beta 0.5 -> 3. With
  // |x|^2 = 1 the instantaneous term is contrast_weight(E) = 2.
  const double e_for_two = std::pow(1.0 / 3.0, 1.5);
  REQUIRE(contrast_weight(e_for_two) == doctest::Approx(2.0));
  AuxCovariances sc = AuxCovariances::zeros(1, 0.5);
  sc.v1[0] = {4.0, Complex{}, 0.0};
  const auto unit = frame_of({Complex(1, 0)}, {Complex(0, 0)});
  sc = update_covariances(sc, unit, e_for_two, e_for_two);
  CHECK(sc.v1[0].a == doctest::Approx(3.0));

  auto bad = prev;
  bad.beta = 1.5;
  CHECK_THROWS_AS(update_covariances(bad, f, et, ei), Error);
}

TEST_CASE("covariances stay Hermitian PSD on a real scene") {
  SceneSpec spec;
  spec.interferers = {{SourceKind::SpeechLike, 150.0}};
  spec.target = {SourceKind::SpeechLike, 60.0};
  spec.duration_s = 1.0;
  const auto frames = stft(render_scene(spec).mixture, StftConfig{});
  auto state = AuxCovariances::zeros(257, 0.96);
  for (const auto& f : frames) {
    const auto part = classify_bins(f, -30.0, 30.0, 0.085, 343.0);
    const auto e = band_energies(f, part);
    state = update_covariances(state, f, e.target, e.interference);
    for (const auto* v : {&state.v1, &state.v2})
      for (const auto& m : *v) {
        const auto ev = m.eigenvalues();
        const double scale = std::max(1e-300, m.trace());
        CHECK(ev[0] >= -1e-12 * scale);
        CHECK(m.a >= 0.0);
        CHECK(m.d >= 0.0);
      }
  }
}

TEST_CASE("classification: zero residual is always target") {
  // Channel 1 equals channel 0: zero phase everywhere, theta_hat = 0.
  const auto x = stft(testutil::random_signal(1, 2048, 2), StftConfig{});
  SpectroFrame f = x[2];
  f.bins.push_back(f.bins[0]);
  for (double bw : {0.5, 5.0, 60.0}) {
    const auto part = classify_bins(f, 0.0, bw, 0.085, 343.0);
    CHECK(part.count(BinClass::Interference) == 0);
    CHECK(part.count(BinClass::Target) > 0);
    for (std::size_t k = 0; k < part.labels.size(); ++k)
      if (f.bin_hz(k) < 100.0 || f.bin_hz(k) > 2000.0) CHECK(part.labels[k] == BinClass::Excluded);
  }
}

TEST_CASE("classification is monotone in beamwidth") {
  SceneSpec spec;
  spec.interferers = {{SourceKind::SpeechLike, 30.0}};
  spec.duration_s = 0.5;
  const auto frames = stft(render_scene(spec).mixture, StftConfig{});
  for (std::size_t t = 0; t < frames.size(); t += 3) {
    std::vector<BinClass> prev;
    for (double bw = 1.0; bw <= 60.0; bw += 3.0) {
      const auto part = classify_bins(frames[t], 0.0, bw, 0.085, 343.0);
      if (!prev.empty())
        for (std::size_t k = 0; k < prev.size(); ++k)
          if (prev[k] == BinClass::Target) CHECK(part.labels[k] == BinClass::Target);
      prev = part.labels;
    }
  }
}

TEST_CASE("classification of a target-only scene") {
  const auto frames = render_frames(testutil::gaussian(16000, 3), 120.0);
  std::size_t strong = 0, in_t = 0;
  for (const auto& f : frames) {
    const auto part = classify_bins(f, 30.0, 20.0, 0.085, 343.0);
    std::vector<double> e;
    for (std::size_t k = 0; k < f.num_bins(); ++k) e.push_back(std::norm(f.bins[0][k]));
    auto sorted = e;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (std::size_t k = 0; k < f.num_bins(); ++k) {
      if (part.labels[k] == BinClass::Excluded || e[k] <= median) continue;
      ++strong;
      if (part.labels[k] == BinClass::Target) ++in_t;
    }
  }
  REQUIRE(strong > 100);
  CHECK(static_cast<double>(in_t) / static_cast<double>(strong) >= 0.95);
}

TEST_CASE("classification separates an interferer 60 degrees away") {
  const auto t = render_frames(testutil::gaussian(16000, 4), 90.0);
  const auto i = render_frames(testutil::gaussian(16000, 5), 150.0);
  std::size_t dominated = 0, in_i = 0;
  for (std::size_t n = 0; n < t.size(); ++n) {
    SpectroFrame mix = t[n];
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t k = 0; k < mix.num_bins(); ++k) mix.bins[c][k] += i[n].bins[c][k];
    const auto part = classify_bins(mix, 0.0, 10.0, 0.085, 343.0);
    for (std::size_t k = 0; k < mix.num_bins(); ++k) {
      if (part.labels[k] == BinClass::Excluded) continue;
      if (std::norm(i[n].bins[0][k]) > std::norm(t[n].bins[0][k])) {
        ++dominated;
        if (part.labels[k] == BinClass::Interference) ++in_i;
      }
    }
  }
  REQUIRE(dominated > 100);
  CHECK(static_cast<double>(in_i) / static_cast<double>(dominated) >= 0.8);
}

TEST_CASE("GEVD simple cases") {
  const auto s1 = solve_gevd({1.0, Complex{}, 0.0}, Hermitian2::identity());
  CHECK(s1.lambda_max == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(s1.w[1]) / std::abs(s1.w[0]) < 1e-9);

  const double sigma2 = 3.0;
  const Complex h(1.0 / std::sqrt(2.0), 0.0);
  const auto s2 = solve_gevd(Hermitian2::outer(h, h, sigma2), Hermitian2::identity());
  CHECK(std::abs(s2.w[0] - s2.w[1]) / std::abs(s2.w[0]) < 1e-9);
  CHECK(s2.lambda_max == doctest::Approx(sigma2).epsilon(1e-5));

  const auto z = solve_gevd(Hermitian2{}, Hermitian2::identity());
  CHECK(z.degenerate);
  CHECK(z.lambda_max == 0.0);
  CHECK(z.w[0] == Complex(1.0, 0.0));
}

TEST_CASE("GEVD matches the brute-force Rayleigh oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto A = oracle::random_psd(rng, trial % 5 == 0);
    const auto Braw = oracle::random_psd(rng, trial % 7 == 0);
    const auto sol = solve_gevd(from_dense(A), from_dense(Braw));
    const auto B = to_dense(regularized(from_dense(Braw)));
    const oracle::V2 w{sol.w[0], sol.w[1]};
    const double q = oracle::rayleigh(A, B, w);
    const auto grid = oracle::grid_max(A, B);
    CHECK(q >= grid.value * (1.0 - 1e-6));
    const auto fine = oracle::refined_max(A, B);
    CHECK(std::abs(q - fine.value) <= 1e-6 * fine.value);
    CHECK(q == doctest::Approx(sol.lambda_max).epsilon(1e-8));
    // A w = lambda B w.
    oracle::V2 aw{}, bw{};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        aw[r] += A[r][c] * w[c];
        bw[r] += B[r][c] * w[c];
      }
    const double res = std::hypot(std::abs(aw[0] - sol.lambda_max * bw[0]), std::abs(aw[1] - sol.lambda_max * bw[1]));
    CHECK(res / std::hypot(std::abs(aw[0]), std::abs(aw[1])) < 1e-8);
  }
}

TEST_CASE("GEVD direction is scale invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto A = from_dense(oracle::random_psd(rng));
    const auto B = from_dense(oracle::random_psd(rng));
    const auto s = solve_gevd(A, B);
    const auto t = solve_gevd(A * 7.5, B);
    CHECK(t.lambda_max == doctest::Approx(7.5 * s.lambda_max).epsilon(1e-9));
    // Parallel up to a complex scale: |<s, t>| = |s| |t|.
    const Complex ip = std::conj(s.w[0]) * t.w[0] + std::conj(s.w[1]) * t.w[1];
    const double ns = std::hypot(std::abs(s.w[0]), std::abs(s.w[1]));
    const double nt = std::hypot(std::abs(t.w[0]), std::abs(t.w[1]));
    CHECK(std::abs(ip) == doctest::Approx(ns * nt).epsilon(1e-9));
  }
}

TEST_CASE("distortionless normalization") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Weight2 w{Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
    SteeringVector s;
    s.entries = {Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
    const auto wn = normalize_distortionless(w, s);
    const Complex resp = std::conj(wn[0]) * s.entries[0] + std::conj(wn[1]) * s.entries[1];
    CHECK(std::abs(resp - Complex(1.0, 0.0)) < 1e-12);
  }
  SteeringVector s;
  s.entries = {Complex(0.3, 0.4), Complex(-1.0, 2.0)};
  const double norm2 = std::norm(s.entries[0]) + std::norm(s.entries[1]);
  const auto ws = normalize_distortionless({2.0 * s.entries[0] / norm2, 2.0 * s.entries[1] / norm2}, s);
  CHECK(std::abs(ws[0] - s.entries[0] / norm2) < 1e-12);

  SteeringVector ones;
  ones.entries = {Complex(1, 0), Complex(1, 0)};
  const auto w10 = normalize_distortionless({Complex(1, 0), Complex(0, 0)}, ones);
  CHECK(w10[0] == Complex(1, 0));
  CHECK(w10[1] == Complex(0, 0));

  SteeringVector e1;
  e1.entries = {Complex(1, 0), Complex(0, 0)};
  CHECK_THROWS_WITH_AS(normalize_distortionless({Complex(0, 0), Complex(1, 0)}, e1), "target in null space", Error);
}

TEST_CASE("identity weights pass channel 0 through") {
  const auto frames = stft(testutil::random_signal(2, 4096, 6), StftConfig{});
  BeamWeights w;
  w.w.assign(257, Weight2{Complex(1, 0), Complex(0, 0)});
  w.lambda_max.assign(257, 0.0);
  const auto out = apply_weights(frames, w);
  REQUIRE(out.size() == frames.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    CHECK(out[t].num_channels() == 1);
    CHECK(out[t].bins[0] == frames[t].bins[0]);
  }
}

TEST_CASE("distortionless weights preserve an on-target source") {
  // Frame-periodic source and rectangular frames: the per-bin far-field
  // model holds exactly, so any distortionless weights return channel 0.
  std::vector<std::size_t> harmonics;
  for (std::size_t h = 1; h < 256; ++h) harmonics.push_back(h);
  const auto src = testutil::periodic_multitone(512 * 16, 512, harmonics, 7);
  const auto sig = render_far_field(src, 120.0, make_dual(), 16000);
  StftConfig rect;
  rect.window = Window::Rectangular;
  rect.hop = 512;
  const auto frames = stft(sig, rect);
  TargetModel model{30.0, 0.085, 343.0, false};
  BeamWeights w;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::size_t k = 0; k < 257; ++k) {
    const Weight2 raw{Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
    w.w.push_back(normalize_distortionless(raw, model.steering(frames[0].bin_hz(k))));
    w.lambda_max.push_back(0.0);
  }
  const auto y = istft(apply_weights(frames, w), rect, 0);
  double err = 0.0, pow = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    err += (y[i] - sig.channels[0][i]) * (y[i] - sig.channels[0][i]);
    pow += sig.channels[0][i] * sig.channels[0][i];
  }
  CHECK(10.0 * std::log10(err / pow) < -40.0);
}

TEST_CASE("delay-and-sum keeps an on-target source under the default frames") {
  const auto sig = render_far_field(testutil::gaussian(16000, 7), 120.0, make_dual(), 16000);
  const StftConfig cfg;
  const auto frames = stft(sig, cfg);
  TargetModel model{30.0, 0.085, 343.0, false};
  BeamWeights w;
  for (std::size_t k = 0; k < 257; ++k) {
    const auto s = model.steering(frames[0].bin_hz(k));
    w.w.push_back({s.entries[0] / 2.0, s.entries[1] / 2.0});
    w.lambda_max.push_back(0.0);
  }
  const auto y = istft(apply_weights(frames, w), cfg, 0);
  double err = 0.0, pow = 0.0;
  for (std::size_t i = 1024; i + 1024 < y.size(); ++i) {
    err += (y[i] - sig.channels[0][i]) * (y[i] - sig.channels[0][i]);
    pow += sig.channels[0][i] * sig.channels[0][i];
  }
  CHECK(10.0 * std::log10(err / pow) < -25.0);
}

TEST_CASE("delay-and-sum attenuates an endfire interferer") {
  const auto i = render_frames(testutil::gaussian(16000, 8), 0.0);
  TargetModel model{0.0, 0.085, 343.0, false};
  BeamWeights w;
  for (std::size_t k = 0; k < 257; ++k) {
    const auto s = model.steering(i[0].bin_hz(k));
    const double n2 = std::norm(s.entries[0]) + std::norm(s.entries[1]);
    w.w.push_back({s.entries[0] / n2, s.entries[1] / n2});
    w.lambda_max.push_back(0.0);
  }
  const auto out = apply_weights(i, w);
  double before = 0.0, after = 0.0;
  for (std::size_t t = 0; t < i.size(); ++t)
    for (std::size_t k = 1; k < 257; ++k) {
      before += std::norm(i[t].bins[0][k]);
      after += std::norm(out[t].bins[0][k]);
    }
  CHECK(after < 0.8 * before);
}

TEST_CASE("pipeline with diffuse noise only keeps the target") {
  SceneSpec spec;
  spec.target = {SourceKind::SpeechLike, 110.0};
  spec.diffuse_noise_db = -20.0;
  spec.input_sinr_db.reset();
  spec.duration_s = 2.0;
  const auto sc = render_scene(spec);
  const StftConfig cfg;
  const auto res = beamform_pipeline(stft(sc.mixture, cfg), 0.085, 343.0);
  const auto y = istft(res.output, cfg, 0);
  CHECK(correlation(y, sc.target_only.channels[0], 512, y.size() - 512) > 0.95);
  CHECK(res.weights.size() == 1);
  CHECK(res.diagnostics.size() == res.output.size());
  CHECK(std::abs(res.doa.azimuth_deg - 20.0) <= 5.0);
}

TEST_CASE("online mode produces per-frame weights") {
  SceneSpec spec;
  spec.interferers = {{SourceKind::SpeechLike, 20.0}};
  spec.duration_s = 1.0;
  const auto frames = stft(render_scene(spec).mixture, StftConfig{});
  MaxSnrConfig cfg;
  cfg.online = true;
  const auto res = beamform_pipeline(frames, 0.085, 343.0, cfg);
  CHECK(res.weights.size() == frames.size());
  cfg.beta = 1.2;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("silent input has no votes") {
  const auto frames = stft(MultichannelSignal(2, 8000), StftConfig{});
  CHECK_THROWS_WITH_AS(beamform_pipeline(frames, 0.085, 343.0), "no votes", Error);
}

}  // TEST_SUITE
