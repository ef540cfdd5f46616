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

#include <cstddef>
#include <optional>
#include <vector>

#include "litebeam/geometry.hpp"
#include "litebeam/signal.hpp"

namespace litebeam {

// Frequency range used for phase voting and bin classification. The upper
// edge is further capped at the spatial-aliasing frequency c / (2 d).
struct BandLimits {
  double low_hz = 100.0;
  double high_hz = 2000.0;

  double upper_for(double spacing, double sound_speed) const;
  bool contains(double hz, double spacing, double sound_speed) const;
};

struct SslConfig {
  double dual_grid_deg = 5.0;
  double circular_grid_deg = 2.0;
  // Peaks are picked on sums over 2 * halfwidth + 1 adjacent cells.
  std::size_t dual_cluster_halfwidth = 1;
  std::size_t circular_cluster_halfwidth = 2;
  BandLimits band;
};

// Vote histogram over an angle grid plus its peak statistics.
//
// Dual estimates live on the pair-local broadside grid -90..90 and report
// azimuth_deg as a broadside angle; circular estimates live on the global
// 0..360 grid and report a global azimuth.
struct DoaEstimate {
  double azimuth_deg = 0.0;
  double grid_start_deg = 0.0;
  double grid_step_deg = 1.0;
  bool wraps = false;  // true for the global circular grid
  std::size_t cluster_halfwidth = 0;  // 0: single-cell peaks
  std::vector<std::size_t> histogram;
  // Circular estimates also keep each pair's share of the votes and its axis.
  std::vector<std::vector<std::size_t>> pair_histograms;
  std::vector<double> pair_axes_deg;
  std::size_t n_votes = 0;
  std::size_t peak_count = 0;
  std::size_t second_count = 0;
  std::size_t gap = 0;

  double cell_center(std::size_t cell) const {
    return grid_start_deg + grid_step_deg * static_cast<double>(cell);
  }
};

// Per-bin phase of X_a conj(X_b) via the four-quadrant arctangent, in
// (-pi, pi]. Bins with |X_a conj(X_b)| below 1e-12 are empty.
std::vector<std::optional<double>> bin_phase(const SpectroFrame& frame, std::size_t ch_a,
                                             std::size_t ch_b);

// Broadside angle whose far-field phase best explains the measured phase:
// asin(clamp(phase c / (2 pi f d), -1, 1)), in degrees.
double phase_to_broadside(double phase, double bin_hz, double spacing, double sound_speed);

// Per-bin phase voting for one pair. Every valid in-band bin contributes one
// vote at its broadside angle rounded to the grid. Throws Error("no votes").
DoaEstimate dual_doa(const FrameSequence& frames, double spacing, double sound_speed,
                     const SslConfig& cfg = {}, std::size_t ch_a = 0, std::size_t ch_b = 1);

// Circular-array localization: every pair votes each valid bin at both the
// estimate and its mirror across the pair axis on a global 360-degree grid.
// The direction is found in two steps: the window all pairs support most
// (sum over pairs of log(1 + window votes)) gives a coarse direction, then the
// pair whose broadside faces it picks the peak of its own votes within
// 90 / n_pairs degrees of it. A pair near endfire piles its clamped votes onto
// the axis, so it never decides the final cell. Throws Error("no votes").
DoaEstimate circular_doa(const FrameSequence& frames, const ArrayGeometry& geometry,
                         const SslConfig& cfg = {});

// Recomputes azimuth, peak, second peak and gap from the histogram. Peaks are
// window sums over cluster_halfwidth cells on either side (a single cell when
// 0). Without per-pair data the heaviest window wins; with it, the two-step
// circular rule above applies. The second peak is the heaviest window at least
// max(2, 2 * cluster_halfwidth + 1) cells from the winner and the gap
// saturates at zero. The azimuth is the center of the most voted cell inside
// the winning window. Exposed so histograms built in parallel can be merged.
void summarize_histogram(DoaEstimate& estimate);

// Adds b's votes into a; both must share a grid.
DoaEstimate merge_histograms(const DoaEstimate& a, const DoaEstimate& b);

}  // namespace litebeam
