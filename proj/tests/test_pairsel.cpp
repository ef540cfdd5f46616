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

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "litebeam/pairsel.hpp"
#include "litebeam/scenesim.hpp"
#include "litebeam/ssl.hpp"
#include "litebeam/stft.hpp"
#include "oracles.hpp"

using namespace litebeam;

namespace {

StftConfig rect_frames() {
  StftConfig c;
  c.window = Window::Rectangular;
  c.hop = 512;
  return c;
}

// Circularly rendered, frame-periodic source: every rectangular frame obeys
// the per-bin far-field model exactly.
FrameSequence exact_frames(const ArrayGeometry& g, double az) {
  std::vector<std::size_t> harmonics;
  for (std::size_t h = 1; h < 100; ++h) harmonics.push_back(h);
  const auto src = testutil::periodic_multitone(512 * 8, 512, harmonics, 21);
  return stft(render_far_field(src, az, g, 16000), rect_frames());
}

}  // namespace

TEST_SUITE("pairsel") {

TEST_CASE("85 degrees selects microphones 3 and 4 in the paired numbering") {
  const auto paired = make_circular(6, 0.085, 343.0, MicLabeling::Paired);
  const auto c = select_pair(85.0, paired);
  CHECK(c.pair_index == 1);
  CHECK(paired.pairs[c.pair_index].first + 1 == 3);
  CHECK(paired.pairs[c.pair_index].second + 1 == 4);
  CHECK(std::abs(c.theta_b_local) == doctest::Approx(5.0));

  // The cyclic numbering reaches the same physical pair, called (#1, #4).
  const auto cyclic = make_circular(6);
  const auto cc = select_pair(85.0, cyclic);
  CHECK(cyclic.pairs[cc.pair_index].first == 0);
  CHECK(cyclic.pairs[cc.pair_index].second == 3);
}

TEST_CASE("a DOA on a broadside gives local angle zero") {
  const auto g = make_circular(6);
  for (std::size_t p = 0; p < 3; ++p) {
    for (double side : {90.0, -90.0}) {
      const auto c = select_pair(pair_axis_angle(g, p) + side, g);
      CHECK(c.pair_index == p);
      CHECK(c.theta_b_local == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("ties go to the lowest pair index") {
  const auto g = make_circular(6);
  // Broadsides at 90 (pair 0) and 30 (pair 2): 60 is 30 degrees from both.
  CHECK(select_pair(60.0, g).pair_index == 0);
  // 0 is 30 degrees from 330 (pair 1) and 30 (pair 2).
  CHECK(select_pair(0.0, g).pair_index == 1);
}

TEST_CASE("the chosen pair keeps the source near broadside") {
  const auto g = make_circular(6);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 360.0);
  for (int i = 0; i < 500; ++i) {
    const double az = u(rng);
    const auto c = select_pair(az, g);
    CHECK(std::abs(c.theta_b_local) <= 30.0 + 1e-9);
    const double back = broadside_to_azimuth(pair_axis_angle(g, c.pair_index), c.theta_b_local, c.mirrored);
    CHECK(angular_distance(back, az) < 1e-9);
  }
}

TEST_CASE("selection rotates with the array") {
  const auto g = make_circular(6);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 360.0);
  for (int i = 0; i < 200; ++i) {
    const double az = u(rng);
    const auto a = select_pair(az, g);
    const auto b = select_pair(az + 17.0, rotated(g, 17.0));
    CHECK(a.pair_index == b.pair_index);
    CHECK(a.theta_b_local == doctest::Approx(b.theta_b_local).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("alignment removes the source phase") {
  const auto g = make_circular(6);
  const double az = 100.0;
  const auto frames = exact_frames(g, az);
  for (std::size_t p = 0; p < 3; ++p) {
    const auto loc = azimuth_to_broadside(pair_axis_angle(g, p), az);
    const auto aligned = align_pair(frames, p, loc.theta_b, g);
    for (const auto& f : aligned) {
      const auto ph = bin_phase(f, 0, 1);
      for (std::size_t k = 1; f.bin_hz(k) < 343.0 / (2.0 * 0.085); ++k) {
        REQUIRE(ph[k].has_value());
        CHECK(std::abs(*ph[k]) < 1e-6);
      }
    }
  }
}

TEST_CASE("aligned pairs agree at the array center") {
  const auto g = make_circular(6);
  const double az = 200.0;
  const auto frames = exact_frames(g, az);
  std::vector<FrameSequence> sums;
  for (std::size_t p = 0; p < 3; ++p) {
    const auto loc = azimuth_to_broadside(pair_axis_angle(g, p), az);
    auto a = align_pair(frames, p, loc.theta_b, g);
    for (auto& f : a)
      for (std::size_t k = 0; k < f.num_bins(); ++k) f.bins[0][k] += f.bins[1][k];
    sums.push_back(std::move(a));
  }
  for (std::size_t t = 0; t < frames.size(); ++t)
    for (std::size_t k = 1; k < 100; ++k)
      for (std::size_t p = 1; p < 3; ++p) {
        const Complex a = sums[0][t].bins[0][k], b = sums[p][t].bins[0][k];
        CHECK(std::abs(std::arg(a * std::conj(b))) < 1e-3);
        CHECK(std::abs(a) == doctest::Approx(std::abs(b)).epsilon(1e-9));
      }
}

TEST_CASE("alignment scales magnitudes by one half") {
  const auto g = make_circular(6);
  const auto frames = stft(testutil::random_signal(6, 2048, 4), StftConfig{});
  for (double th : {0.0, 17.0, -44.0}) {
    const auto a = align_pair(frames, 2, th, g);
    for (std::size_t t = 0; t < frames.size(); ++t)
      for (std::size_t k = 0; k < 257; ++k) {
        CHECK(std::abs(a[t].bins[0][k]) == doctest::Approx(0.5 * std::abs(frames[t].bins[g.pairs[2].first][k])));
        CHECK(std::abs(a[t].bins[1][k]) == doctest::Approx(0.5 * std::abs(frames[t].bins[g.pairs[2].second][k])));
        if (th == 0.0) CHECK(a[t].bins[0][k] == 0.5 * frames[t].bins[g.pairs[2].first][k]);
      }
  }
  CHECK_THROWS_AS(align_pair(frames, 3, 0.0, g), Error);
}

TEST_CASE("circular beamforming selects the pair facing the source") {
  const auto g = make_circular(6, 0.085, 343.0, MicLabeling::Paired);
  SceneSpec spec;
  spec.geometry = g;
  spec.target = {SourceKind::SpeechLike, 85.0};
  spec.interferers = {{SourceKind::SpeechLike, 200.0}};
  spec.duration_s = 2.0;
  const auto frames = stft(render_scene(spec).mixture, StftConfig{});
  const auto res = beamform_circular(frames, g);
  CHECK(angular_distance(res.doa.azimuth_deg, 85.0) <= 2.0);
  CHECK(res.pair.pair_index == 1);
  CHECK(res.beam.output.size() == frames.size());
  CHECK(res.beam.output.front().num_channels() == 1);
  CHECK(res.pair_doa.n_votes > 0);
}

}  // TEST_SUITE
