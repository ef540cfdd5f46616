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

#include "litebeam/geometry.hpp"
#include "litebeam/maxsnr.hpp"
#include "litebeam/signal.hpp"
#include "litebeam/ssl.hpp"

namespace litebeam {

struct PairChoice {
  std::size_t pair_index = 0;
  double theta_b_local = 0.0;  // DOA as the chosen pair's broadside angle
  bool mirrored = false;
};

// The pair whose broadside (either normal of its axis) is closest to the DOA.
// Ties go to the lowest pair index.
PairChoice select_pair(double doa_azimuth_deg, const ArrayGeometry& geometry);

// Two-channel frames of the pair with each channel multiplied by the
// conjugated alignment_vector entry, so that a source at theta_b_local is in
// phase on both channels and referenced to the array center (amplitude 1/2).
FrameSequence align_pair(const FrameSequence& frames, std::size_t pair_index,
                         double theta_b_local, const ArrayGeometry& geometry);

// The TargetModel matching align_pair's output.
TargetModel aligned_target(const ArrayGeometry& geometry, const PairChoice& choice);

struct CircularBeamformResult {
  DoaEstimate doa;       // circular (global) estimate
  DoaEstimate pair_doa;  // local histogram of the selected pair
  PairChoice pair;
  BeamformResult beam;
};

// circular_doa -> select_pair -> align_pair -> beamform_with_doa. The
// steering direction comes from the global estimate; the beamwidth comes from
// the gap of the selected pair's own local histogram, so that it reflects the
// interference seen by the pair that actually beamforms.
CircularBeamformResult beamform_circular(const FrameSequence& frames,
                                         const ArrayGeometry& geometry,
                                         const MaxSnrConfig& cfg = {});

}  // namespace litebeam
