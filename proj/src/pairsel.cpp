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

#include "litebeam/pairsel.hpp"

#include <cmath>
#include <limits>

namespace litebeam {

PairChoice select_pair(double doa_azimuth_deg, const ArrayGeometry& geometry) {
  geometry.validate();
  if (geometry.pairs.empty()) throw Error("geometry has no pairs");
  PairChoice best;
  double best_diff = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < geometry.pairs.size(); ++p) {
    const double axis = pair_axis_angle(geometry, p);
    const double diff = std::min(angular_distance(doa_azimuth_deg, axis + 90.0),
                                 angular_distance(doa_azimuth_deg, axis - 90.0));
    if (diff < best_diff - 1e-9) {
      best_diff = diff;
      const auto local = azimuth_to_broadside(axis, doa_azimuth_deg);
      best = {p, local.theta_b, local.mirrored};
    }
  }
  return best;
}

FrameSequence align_pair(const FrameSequence& frames, std::size_t pair_index,
                         double theta_b_local, const ArrayGeometry& geometry) {
  if (pair_index >= geometry.pairs.size()) throw Error("pair index out of range");
  const auto& pr = geometry.pairs[pair_index];
  const double d = geometry.pair_spacing(pair_index);
  auto out = select_channels(frames, {pr.first, pr.second});
  for (auto& frame : out) {
    for (std::size_t k = 0; k < frame.num_bins(); ++k) {
      const auto s = alignment_vector(frame.bin_hz(k), d, theta_b_local, geometry.sound_speed);
      frame.bins[0][k] *= std::conj(s.entries[0]);
      frame.bins[1][k] *= std::conj(s.entries[1]);
    }
  }
  return out;
}

TargetModel aligned_target(const ArrayGeometry& geometry, const PairChoice& choice) {
  return {choice.theta_b_local, geometry.pair_spacing(choice.pair_index), geometry.sound_speed,
          true};
}

CircularBeamformResult beamform_circular(const FrameSequence& frames,
                                         const ArrayGeometry& geometry,
                                         const MaxSnrConfig& cfg) {
  CircularBeamformResult out;
  out.doa = circular_doa(frames, geometry, cfg.ssl);
  out.pair = select_pair(out.doa.azimuth_deg, geometry);
  const auto& pr = geometry.pairs[out.pair.pair_index];
  const double d = geometry.pair_spacing(out.pair.pair_index);
  out.pair_doa = dual_doa(frames, d, geometry.sound_speed, cfg.ssl, pr.first, pr.second);
  const auto aligned = align_pair(frames, out.pair.pair_index, out.pair.theta_b_local, geometry);
  out.beam = beamform_with_doa(aligned, aligned_target(geometry, out.pair), out.pair_doa,
                               out.doa.azimuth_deg,
                               static_cast<double>(out.pair_doa.n_votes), cfg);
  return out;
}

}  // namespace litebeam
