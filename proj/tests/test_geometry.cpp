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

#include "litebeam/geometry.hpp"
#include "oracles.hpp"

using namespace litebeam;

namespace {
ArrayGeometry two_points(Point2 a, Point2 b) {
  ArrayGeometry g;
  g.mics = {a, b};
  g.pairs = {{0, 1}};
  return g;
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("phase difference values") {
  for (double f : {100.0, 1000.0, 3000.0}) CHECK(phase_difference(f, 0.085, 0.0, 343.0) == 0.0);
  const double full = phase_difference(1000.0, 0.085, 90.0, 343.0);
  CHECK(full == doctest::Approx(2.0 * oracle::kPi * 1000.0 * 0.085 / 343.0).epsilon(1e-12));
  // The commonly quoted 1.5568 is rounded; the exact value is 1.55706.
  CHECK(full == doctest::Approx(1.5568).epsilon(1e-3));
  CHECK(phase_difference(1000.0, 0.085, 30.0, 343.0) == doctest::Approx(full / 2.0).epsilon(1e-12));
}

TEST_CASE("phase difference is monotone in sin theta") {
  double prev = -1e9;
  for (double th = -90.0; th <= 90.0; th += 0.5) {
    const double v = phase_difference(1500.0, 0.085, th, 343.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("steering vector examples") {
  const auto s0 = steering_vector(1234.0, 0.085, 0.0, 343.0);
  CHECK(std::abs(s0.entries[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(s0.entries[1] - Complex(1, 0)) < 1e-15);

  // Frequency at which the endfire phase is exactly pi.
  const double f_pi = 343.0 / (2.0 * 0.085);
  const auto sp = steering_vector(f_pi, 0.085, 90.0, 343.0);
  CHECK(std::abs(sp.entries[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(sp.entries[1] - Complex(-1, 0)) < 1e-12);

  const auto s = steering_vector(2000.0, 0.085, 30.0, 343.0);
  const double ph = oracle::pair_phase(2000.0, 0.085, 30.0, 343.0);
  CHECK(ph == doctest::Approx(1.5568).epsilon(1e-3));
  CHECK(std::abs(s.entries[1] - std::polar(1.0, -ph)) < 1e-12);
}

TEST_CASE("alignment vector examples") {
  const auto a0 = alignment_vector(800.0, 0.085, 0.0, 343.0);
  CHECK(std::abs(a0.entries[0] - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(a0.entries[1] - Complex(0.5, 0)) < 1e-15);
  const auto a = alignment_vector(1000.0, 0.085, 90.0, 343.0);
  CHECK(std::arg(a.entries[0]) == doctest::Approx(0.7784).epsilon(1e-4));
  CHECK(std::abs(a.entries[0]) == doctest::Approx(0.5));
}

TEST_CASE("steering and alignment vectors agree on the inter-channel phase") {
  for (double f = 50.0; f <= 8000.0; f += 390.0) {
    for (double th = -90.0; th <= 90.0; th += 7.5) {
      const auto s = steering_vector(f, 0.085, th, 343.0);
      const auto a = alignment_vector(f, 0.085, th, 343.0);
      const double ds = std::arg(s.entries[0]) - std::arg(s.entries[1]);
      const double da = std::arg(a.entries[0]) - std::arg(a.entries[1]);
      const double ref = oracle::wrap(oracle::pair_phase(f, 0.085, th, 343.0));
      CHECK(std::abs(oracle::wrap(ds - ref)) < 1e-9);
      CHECK(std::abs(oracle::wrap(da - ref)) < 1e-9);
    }
  }
}

TEST_CASE("pair axis angles") {
  CHECK(pair_axis_angle(two_points({0, 0}, {1, 0}), 0) == doctest::Approx(0.0));
  CHECK(pair_axis_angle(two_points({0, 0}, {0, 1}), 0) == doctest::Approx(90.0));
  CHECK(pair_axis_angle(two_points({0, 0}, {-1, -1}), 0) == doctest::Approx(225.0));
  CHECK_THROWS_AS(pair_axis_angle(two_points({0.2, 0.3}, {0.2, 0.3}), 0), Error);
}

TEST_CASE("circular construction") {
  const auto g = make_circular(6, 0.085);
  REQUIRE(g.pairs.size() == 3);
  for (std::size_t p = 0; p < 3; ++p) CHECK(g.pair_spacing(p) == doctest::Approx(0.085).epsilon(1e-12));
  for (std::size_t p = 0; p + 1 < 3; ++p) {
    const double diff = wrap_degrees(pair_axis_angle(g, p + 1) - pair_axis_angle(g, p));
    CHECK(diff == doctest::Approx(60.0).epsilon(1e-9));
  }
  const auto g4 = make_circular(4, 0.1);
  CHECK(g4.mics[0].x == doctest::Approx(0.05));
  CHECK(g4.mics[0].y == doctest::Approx(0.0).scale(1.0));
  CHECK(g4.center().x == doctest::Approx(0.0).scale(1.0));
  CHECK(g4.center().y == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("paired labelling permutes the same positions") {
  const auto cyc = make_circular(6, 0.085, 343.0, MicLabeling::Cyclic);
  const auto par = make_circular(6, 0.085, 343.0, MicLabeling::Paired);
  for (const auto& p : par.mics) {
    bool found = false;
    for (const auto& q : cyc.mics) found = found || (std::hypot(p.x - q.x, p.y - q.y) < 1e-12);
    CHECK(found);
  }
  for (std::size_t p = 0; p < 3; ++p) {
    CHECK(par.pairs[p].first == 2 * p);
    CHECK(par.pairs[p].second == 2 * p + 1);
    CHECK(par.pair_spacing(p) == doctest::Approx(0.085));
  }
}

TEST_CASE("dual layout maps the front half-plane") {
  const auto g = make_dual();
  CHECK(g.pair_spacing(0) == doctest::Approx(0.085));
  CHECK(broadside_to_azimuth(pair_axis_angle(g, 0), 0.0) == doctest::Approx(90.0));
  CHECK(broadside_to_azimuth(pair_axis_angle(g, 0), 30.0) == doctest::Approx(120.0));
}

TEST_CASE("validation rejects bad layouts") {
  CHECK_THROWS_AS(make_circular(5), Error);
  CHECK_THROWS_AS(make_circular(0), Error);
  CHECK_THROWS_AS(make_dual(-0.01), Error);
  CHECK_THROWS_AS(make_dual(0.085, 0.0), Error);
  auto g = make_dual();
  g.pairs = {{0, 2}};
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("angle conversions round trip") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 360.0);
  for (int i = 0; i < 2000; ++i) {
    const double axis = u(rng), az = u(rng);
    const auto loc = azimuth_to_broadside(axis, az);
    CHECK(loc.theta_b >= -90.0);
    CHECK(loc.theta_b <= 90.0);
    const double back = broadside_to_azimuth(axis, loc.theta_b, loc.mirrored);
    CHECK(angular_distance(back, az) < 1e-9);
  }
}

TEST_CASE("wrapping helpers") {
  CHECK(wrap_degrees(-10.0) == doctest::Approx(350.0));
  CHECK(wrap_degrees(720.0) == doctest::Approx(0.0));
  CHECK(wrap_signed_degrees(190.0) == doctest::Approx(-170.0));
  CHECK(angular_distance(350.0, 10.0) == doctest::Approx(20.0));
  CHECK(wrap_radians(3.0 * oracle::kPi) == doctest::Approx(oracle::kPi));
}

TEST_CASE("rotation moves every microphone") {
  const auto g = make_circular(6);
  const auto r = rotated(g, 30.0);
  for (std::size_t p = 0; p < 3; ++p)
    CHECK(wrap_degrees(pair_axis_angle(r, p) - pair_axis_angle(g, p)) == doctest::Approx(30.0));
}

}  // TEST_SUITE
