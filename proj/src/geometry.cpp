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

#include "litebeam/geometry.hpp"

#include <cmath>

namespace litebeam {

namespace {

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace

Point2 ArrayGeometry::center() const {
  Point2 c;
  if (mics.empty()) return c;
  for (const auto& p : mics) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(mics.size());
  c.y /= static_cast<double>(mics.size());
  return c;
}

double ArrayGeometry::pair_spacing(std::size_t pair_index) const {
  if (pair_index >= pairs.size()) throw Error("pair index out of range");
  const auto& a = mics[pairs[pair_index].first];
  const auto& b = mics[pairs[pair_index].second];
  return std::hypot(b.x - a.x, b.y - a.y);
}

void ArrayGeometry::validate() const {
  if (!(sound_speed > 0.0)) throw Error("sound_speed must be positive");
  for (const auto& pr : pairs)
    if (pr.first >= mics.size() || pr.second >= mics.size())
      throw Error("pair references a missing microphone");
  if (kind == ArrayKind::Dual) {
    if (mics.size() != 2) throw Error("dual array needs exactly 2 microphones");
  } else {
    if (mics.size() < 4 || mics.size() % 2 != 0)
      throw Error("circular array needs an even number (>= 4) of microphones");
    if (pairs.empty()) throw Error("circular array needs at least one pair");
    const Point2 c = center();
    for (const auto& pr : pairs) {
      const double mx = 0.5 * (mics[pr.first].x + mics[pr.second].x);
      const double my = 0.5 * (mics[pr.first].y + mics[pr.second].y);
      if (std::hypot(mx - c.x, my - c.y) > 1e-9)
        throw Error("circular pair midpoint is not the array center");
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pair_spacing(i) <= 0.0) throw Error("degenerate pair");
}

ArrayGeometry make_dual(double spacing, double sound_speed) {
  if (!(spacing > 0.0)) throw Error("spacing must be positive");
  ArrayGeometry g;
  g.kind = ArrayKind::Dual;
  g.mics = {{-0.5 * spacing, 0.0}, {0.5 * spacing, 0.0}};
  g.pairs = {{0, 1}};
  g.sound_speed = sound_speed;
  g.validate();
  return g;
}

MicLabeling parse_labeling(const std::string& name) {
  if (name == "cyclic") return MicLabeling::Cyclic;
  if (name == "paired") return MicLabeling::Paired;
  throw Error("unknown mic labeling '" + name + "'");
}

ArrayGeometry make_circular(std::size_t num_mics, double diameter, double sound_speed,
                            MicLabeling labeling) {
  if (num_mics < 4 || num_mics % 2 != 0)
    throw Error("circular array needs an even number (>= 4) of microphones");
  if (!(diameter > 0.0)) throw Error("diameter must be positive");
  const double r = 0.5 * diameter;
  const std::size_t half = num_mics / 2;
  const double step = 360.0 / static_cast<double>(num_mics);
  const auto at = [r](double deg) {
    return Point2{r * std::cos(deg2rad(deg)), r * std::sin(deg2rad(deg))};
  };

  ArrayGeometry g;
  g.kind = ArrayKind::Circular;
  g.sound_speed = sound_speed;
  if (labeling == MicLabeling::Cyclic) {
    for (std::size_t k = 0; k < num_mics; ++k) g.mics.push_back(at(step * static_cast<double>(k)));
    for (std::size_t k = 0; k < half; ++k) g.pairs.push_back({k, k + half});
  } else {
    for (std::size_t p = 0; p < half; ++p) {
      const double axis = step * (static_cast<double>(p) - 1.0);
      g.mics.push_back(at(axis));
      g.mics.push_back(at(axis + 180.0));
      g.pairs.push_back({2 * p, 2 * p + 1});
    }
  }
  g.validate();
  return g;
}

ArrayGeometry rotated(const ArrayGeometry& geometry, double degrees) {
  ArrayGeometry g = geometry;
  const double c = std::cos(deg2rad(degrees)), s = std::sin(deg2rad(degrees));
  for (auto& p : g.mics) p = {c * p.x - s * p.y, s * p.x + c * p.y};
  return g;
}

double phase_difference(double bin_hz, double spacing, double theta_b_deg,
                        double sound_speed) {
  return 2.0 * kPi * bin_hz * spacing * std::sin(deg2rad(theta_b_deg)) / sound_speed;
}

SteeringVector steering_vector(double bin_hz, double spacing, double theta_b_deg,
                               double sound_speed) {
  const double dphi = phase_difference(bin_hz, spacing, theta_b_deg, sound_speed);
  return {{Complex(1.0, 0.0), std::polar(1.0, -dphi)}, bin_hz, theta_b_deg};
}

SteeringVector alignment_vector(double bin_hz, double spacing, double theta_b_deg,
                                double sound_speed) {
  const double half = 0.5 * phase_difference(bin_hz, spacing, theta_b_deg, sound_speed);
  return {{std::polar(0.5, half), std::polar(0.5, -half)}, bin_hz, theta_b_deg};
}

double pair_axis_angle(const ArrayGeometry& geometry, std::size_t pair_index) {
  if (pair_index >= geometry.pairs.size()) throw Error("pair index out of range");
  const auto& a = geometry.mics[geometry.pairs[pair_index].first];
  const auto& b = geometry.mics[geometry.pairs[pair_index].second];
  const double dx = b.x - a.x, dy = b.y - a.y;
  if (std::hypot(dx, dy) == 0.0) throw Error("degenerate pair");
  return wrap_degrees(rad2deg(std::atan2(dy, dx)));
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w -= 360.0;
  return w;
}

double wrap_signed_degrees(double deg) {
  double w = wrap_degrees(deg + 180.0) - 180.0;
  return w;
}

double angular_distance(double a_deg, double b_deg) {
  return std::abs(wrap_signed_degrees(a_deg - b_deg));
}

double wrap_radians(double rad) {
  double w = std::remainder(rad, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double broadside_to_azimuth(double axis_deg, double theta_b_deg, bool mirrored) {
  return mirrored ? wrap_degrees(axis_deg - 90.0 - theta_b_deg)
                  : wrap_degrees(axis_deg + 90.0 + theta_b_deg);
}

LocalAngle azimuth_to_broadside(double axis_deg, double azimuth_deg) {
  const double front = wrap_signed_degrees(azimuth_deg - axis_deg - 90.0);
  if (front >= -90.0 && front <= 90.0) return {front, false};
  return {wrap_signed_degrees(axis_deg - 90.0 - azimuth_deg), true};
}

}  // namespace litebeam
