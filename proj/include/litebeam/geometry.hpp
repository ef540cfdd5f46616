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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "litebeam/signal.hpp"

namespace litebeam {

inline constexpr double kDefaultSoundSpeed = 343.0;
inline constexpr double kDefaultSpacing = 0.085;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct MicPair {
  std::size_t first = 0;
  std::size_t second = 0;
};

enum class ArrayKind { Dual, Circular };

// Planar microphone layout. Angles follow two conventions:
//
//   broadside (theta_b): pair-local, in [-90, 90] degrees, zero on the
//     perpendicular of the pair axis. Positive theta_b means the wave reaches
//     the pair's first microphone before the second, so the second channel
//     lags by 2 pi f d sin(theta_b) / c.
//   azimuth: global, in [0, 360) degrees, counterclockwise from +x, pointing
//     from the array towards the source.
//
// For a pair with axis angle phi (first -> second mic) the two azimuths that
// share a broadside angle are phi + 90 + theta_b and its mirror across the
// axis, phi - 90 - theta_b.
struct ArrayGeometry {
  std::vector<Point2> mics;
  ArrayKind kind = ArrayKind::Dual;
  std::vector<MicPair> pairs;
  double sound_speed = kDefaultSoundSpeed;

  std::size_t num_mics() const { return mics.size(); }
  Point2 center() const;
  double pair_spacing(std::size_t pair_index) const;

  // Throws Error when the layout breaks the dual/circular invariants.
  void validate() const;
};

// Two microphones on the x axis, centered on the origin. The front half-plane
// (azimuth 0..180) maps to broadside angles -90..90 via azimuth = 90 + theta_b.
ArrayGeometry make_dual(double spacing = kDefaultSpacing,
                        double sound_speed = kDefaultSoundSpeed);

// Microphone numbering for uniform circles.
//   Cyclic: mic k sits at k * 360 / n degrees; pairs are (k, k + n/2).
//   Paired: diametral partners are numbered consecutively, pair p = (2p, 2p+1)
//           with axis angle (p - 1) * 360 / n. The physical positions are the
//           same set as Cyclic; only the labels differ.
enum class MicLabeling { Cyclic, Paired };

MicLabeling parse_labeling(const std::string& name);

ArrayGeometry make_circular(std::size_t num_mics, double diameter = kDefaultSpacing,
                            double sound_speed = kDefaultSoundSpeed,
                            MicLabeling labeling = MicLabeling::Cyclic);

// Rotates every microphone about the origin.
ArrayGeometry rotated(const ArrayGeometry& geometry, double degrees);

// Unwrapped inter-microphone phase 2 pi f d sin(theta_b) / c.
double phase_difference(double bin_hz, double spacing, double theta_b_deg,
                        double sound_speed);

struct SteeringVector {
  std::array<Complex, 2> entries{};
  double bin_hz = 0.0;
  double theta_b = 0.0;
};

// [1, exp(-j dphi)]: the relative response of a far-field source at theta_b.
SteeringVector steering_vector(double bin_hz, double spacing, double theta_b_deg,
                               double sound_speed);

// 1/2 [exp(+j dphi/2), exp(-j dphi/2)]: the response referenced to the pair
// midpoint. Multiplying the channels by the conjugate entries removes the
// source's phase relative to the array center.
SteeringVector alignment_vector(double bin_hz, double spacing, double theta_b_deg,
                                double sound_speed);

// atan2 of the pair axis in degrees, [0, 360). Throws on coincident mics.
double pair_axis_angle(const ArrayGeometry& geometry, std::size_t pair_index);

double wrap_degrees(double deg);          // -> [0, 360)
double wrap_signed_degrees(double deg);   // -> [-180, 180)
double angular_distance(double a_deg, double b_deg);  // -> [0, 180]
double wrap_radians(double rad);          // -> (-pi, pi]

struct LocalAngle {
  double theta_b = 0.0;
  bool mirrored = false;  // azimuth lies on the phi - 90 side of the axis
};

double broadside_to_azimuth(double axis_deg, double theta_b_deg, bool mirrored = false);
LocalAngle azimuth_to_broadside(double axis_deg, double azimuth_deg);

}  // namespace litebeam
