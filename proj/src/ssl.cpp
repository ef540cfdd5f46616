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

#include "litebeam/ssl.hpp"

#include <algorithm>
#include <cmath>

namespace litebeam {

namespace {

constexpr double kEmptyBin = 1e-12;

std::size_t cell_distance(const DoaEstimate& est, std::size_t a, std::size_t b) {
  const std::size_t d = a > b ? a - b : b - a;
  return est.wraps ? std::min(d, est.histogram.size() - d) : d;
}

DoaEstimate empty_grid(double start, double step, std::size_t cells, bool wraps) {
  DoaEstimate est;
  est.grid_start_deg = start;
  est.grid_step_deg = step;
  est.wraps = wraps;
  est.histogram.assign(cells, 0);
  return est;
}

// Sums of h over 2 * hw + 1 cells centered on each cell.
std::vector<std::size_t> window_sums(const DoaEstimate& est, const std::vector<std::size_t>& h,
                                     long hw) {
  const auto n = static_cast<long>(h.size());
  std::vector<std::size_t> out(h.size(), 0);
  for (long i = 0; i < n; ++i)
    for (long j = i - hw; j <= i + hw; ++j) {
      if (est.wraps)
        out[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(((j % n) + n) % n)];
      else if (j >= 0 && j < n)
        out[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(j)];
    }
  return out;
}

}  // namespace

double BandLimits::upper_for(double spacing, double sound_speed) const {
  return std::min(high_hz, sound_speed / (2.0 * spacing));
}

bool BandLimits::contains(double hz, double spacing, double sound_speed) const {
  return hz >= low_hz && hz <= upper_for(spacing, sound_speed);
}

std::vector<std::optional<double>> bin_phase(const SpectroFrame& frame, std::size_t ch_a,
                                             std::size_t ch_b) {
  if (ch_a >= frame.num_channels() || ch_b >= frame.num_channels())
    throw Error("bin_phase channel out of range");
  const auto& xa = frame.bins[ch_a];
  const auto& xb = frame.bins[ch_b];
  std::vector<std::optional<double>> out(xa.size());
  for (std::size_t k = 0; k < xa.size(); ++k) {
    const Complex y = xa[k] * std::conj(xb[k]);
    if (std::abs(y) >= kEmptyBin) out[k] = std::atan2(y.imag(), y.real());
  }
  return out;
}

double phase_to_broadside(double phase, double bin_hz, double spacing, double sound_speed) {
  const double s = phase * sound_speed / (2.0 * kPi * bin_hz * spacing);
  return std::asin(std::clamp(s, -1.0, 1.0)) * 180.0 / kPi;
}

void summarize_histogram(DoaEstimate& est) {
  const auto& h = est.histogram;
  est.n_votes = 0;
  for (auto c : h) est.n_votes += c;
  if (h.empty()) return;
  const auto hw = static_cast<long>(est.cluster_halfwidth);
  const auto n = static_cast<long>(h.size());
  const auto mass = window_sums(est, h, hw);
  const auto argmax_near = [&](const std::vector<std::size_t>& hist, const std::vector<double>& score,
                               std::size_t center, long radius) {
    std::size_t top = center;
    for (long j = static_cast<long>(center) - radius; j <= static_cast<long>(center) + radius; ++j) {
      if (!est.wraps && (j < 0 || j >= n)) continue;
      const auto cell = static_cast<std::size_t>(((j % n) + n) % n);
      if (score.empty() ? hist[cell] > hist[top] : score[cell] > score[top]) top = cell;
    }
    return top;
  };

  std::size_t best = 0;
  for (std::size_t i = 1; i < mass.size(); ++i)
    if (mass[i] > mass[best]) best = i;
  std::size_t top = argmax_near(h, {}, best, hw);

  const std::size_t pairs = est.pair_histograms.size();
  if (pairs > 0 && est.pair_axes_deg.size() == pairs) {
    // Coarse direction: the window all pairs agree on most (sum of log masses).
    std::vector<double> consensus(h.size(), 0.0);
    for (const auto& ph : est.pair_histograms) {
      const auto m = window_sums(est, ph, hw);
      for (std::size_t i = 0; i < h.size(); ++i) consensus[i] += std::log1p(static_cast<double>(m[i]));
    }
    const std::size_t coarse = argmax_near(h, consensus, 0, n);
    // Refinement on the pair facing the coarse direction, searched within the
    // sector that pair is responsible for.
    const double az = est.cell_center(coarse);
    std::size_t facing = 0;
    double closest = 1e9;
    for (std::size_t p = 0; p < pairs; ++p) {
      const double off = std::min(angular_distance(az, est.pair_axes_deg[p] + 90.0),
                                  angular_distance(az, est.pair_axes_deg[p] - 90.0));
      if (off < closest - 1e-9) {
        closest = off;
        facing = p;
      }
    }
    const auto& ph = est.pair_histograms[facing];
    const auto pm = window_sums(est, ph, hw);
    const auto radius = static_cast<long>(std::ceil(90.0 / static_cast<double>(pairs) / est.grid_step_deg));
    std::vector<double> score(pm.begin(), pm.end());
    best = argmax_near(ph, score, coarse, radius);
    top = argmax_near(ph, {}, best, hw);
  }

  const auto min_sep = static_cast<std::size_t>(std::max<long>(2, 2 * hw + 1));
  std::size_t second = 0;
  for (std::size_t i = 0; i < mass.size(); ++i)
    if (cell_distance(est, i, best) >= min_sep) second = std::max(second, mass[i]);
  est.peak_count = mass[best];
  est.second_count = second;
  est.gap = est.peak_count > second ? est.peak_count - second : 0;
  const double center = est.cell_center(top);
  est.azimuth_deg = est.wraps ? wrap_degrees(center) : center;
}

DoaEstimate merge_histograms(const DoaEstimate& a, const DoaEstimate& b) {
  if (a.histogram.size() != b.histogram.size() || a.grid_step_deg != b.grid_step_deg ||
      a.grid_start_deg != b.grid_start_deg || a.wraps != b.wraps ||
      a.cluster_halfwidth != b.cluster_halfwidth)
    throw Error("cannot merge histograms on different grids");
  DoaEstimate out = a;
  if (a.pair_histograms.size() != b.pair_histograms.size() || a.pair_axes_deg != b.pair_axes_deg)
    throw Error("cannot merge histograms on different grids");
  for (std::size_t i = 0; i < out.histogram.size(); ++i) out.histogram[i] += b.histogram[i];
  for (std::size_t p = 0; p < out.pair_histograms.size(); ++p)
    for (std::size_t i = 0; i < out.histogram.size(); ++i)
      out.pair_histograms[p][i] += b.pair_histograms[p][i];
  summarize_histogram(out);
  return out;
}

DoaEstimate dual_doa(const FrameSequence& frames, double spacing, double sound_speed,
                     const SslConfig& cfg, std::size_t ch_a, std::size_t ch_b) {
  if (frames.empty()) throw Error("dual_doa needs at least one frame");
  if (!(spacing > 0.0) || !(cfg.dual_grid_deg > 0.0)) throw Error("invalid dual_doa parameters");
  const double step = cfg.dual_grid_deg;
  const auto half_cells = static_cast<long>(std::floor(90.0 / step + 1e-9));
  auto est = empty_grid(-step * static_cast<double>(half_cells), step,
                        static_cast<std::size_t>(2 * half_cells + 1), false);
  est.cluster_halfwidth = cfg.dual_cluster_halfwidth;

  for (const auto& frame : frames) {
    const auto phases = bin_phase(frame, ch_a, ch_b);
    for (std::size_t k = 0; k < phases.size(); ++k) {
      const double f = frame.bin_hz(k);
      if (!phases[k] || !cfg.band.contains(f, spacing, sound_speed)) continue;
      const double theta = phase_to_broadside(*phases[k], f, spacing, sound_speed);
      const long cell = std::clamp(std::lround(theta / step), -half_cells, half_cells);
      ++est.histogram[static_cast<std::size_t>(cell + half_cells)];
    }
  }
  summarize_histogram(est);
  if (est.n_votes == 0) throw Error("no votes");
  return est;
}

DoaEstimate circular_doa(const FrameSequence& frames, const ArrayGeometry& geometry,
                         const SslConfig& cfg) {
  geometry.validate();
  if (geometry.kind != ArrayKind::Circular || geometry.pairs.size() < 2)
    throw Error("circular_doa needs a circular geometry with >= 2 pairs");
  if (frames.empty()) throw Error("circular_doa needs at least one frame");
  const double step = cfg.circular_grid_deg;
  if (!(step > 0.0)) throw Error("invalid circular grid step");
  const auto cells = static_cast<std::size_t>(std::lround(360.0 / step));
  auto est = empty_grid(0.0, 360.0 / static_cast<double>(cells), cells, true);
  est.cluster_halfwidth = cfg.circular_cluster_halfwidth;

  est.pair_histograms.assign(geometry.pairs.size(), std::vector<std::size_t>(cells, 0));
  for (std::size_t p = 0; p < geometry.pairs.size(); ++p)
    est.pair_axes_deg.push_back(pair_axis_angle(geometry, p));
  std::size_t current = 0;
  const auto vote = [&](double az) {
    const auto cell = static_cast<std::size_t>(std::lround(wrap_degrees(az) / est.grid_step_deg)) % cells;
    ++est.histogram[cell];
    ++est.pair_histograms[current][cell];
  };
  for (std::size_t p = 0; p < geometry.pairs.size(); ++p) {
    current = p;
    const double axis = pair_axis_angle(geometry, p);
    const double d = geometry.pair_spacing(p);
    const auto& pr = geometry.pairs[p];
    for (const auto& frame : frames) {
      const auto phases = bin_phase(frame, pr.first, pr.second);
      for (std::size_t k = 0; k < phases.size(); ++k) {
        const double f = frame.bin_hz(k);
        if (!phases[k] || !cfg.band.contains(f, d, geometry.sound_speed)) continue;
        const double theta = phase_to_broadside(*phases[k], f, d, geometry.sound_speed);
        vote(broadside_to_azimuth(axis, theta, false));
        vote(broadside_to_azimuth(axis, theta, true));
      }
    }
  }
  summarize_histogram(est);
  if (est.n_votes == 0) throw Error("no votes");
  return est;
}

}  // namespace litebeam
