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
#include <string>
#include <vector>

#include "litebeam/signal.hpp"

namespace litebeam {

enum class Window { Rectangular, SqrtHann };

Window parse_window(const std::string& name);
std::string window_name(Window window);

// Analysis/synthesis parameters. The same window is used on both sides, so
// the squared window must overlap-add to a constant at the chosen hop.
struct StftConfig {
  std::size_t fft_size = 512;
  std::size_t hop = 256;
  Window window = Window::SqrtHann;

  std::size_t num_bins() const { return fft_size / 2 + 1; }

  // Throws Error when hop is out of range or the window pair is not COLA.
  void validate() const;
};

// Periodic window of length cfg.fft_size.
std::vector<double> make_window(const StftConfig& cfg);

// Constant value of sum_m w^2[n - m hop]; validate() guarantees it exists.
double overlap_add_gain(const StftConfig& cfg);

// Frames start at 0, hop, 2 hop, ... while a whole frame fits.
// Throws Error("insufficient samples") when the signal is shorter than a frame.
FrameSequence stft(const MultichannelSignal& signal, const StftConfig& cfg);

// Zero-pads fft_size - hop samples on both sides (and the tail up to a whole
// hop) before analysis, so every input sample sees the full overlap-add gain.
// Frame energies then sum to overlap_add_gain() times the signal energy.
FrameSequence stft_padded(const MultichannelSignal& signal, const StftConfig& cfg);

// Weighted overlap-add synthesis of one channel. Output length is
// (frames - 1) * hop + fft_size.
std::vector<double> istft(const FrameSequence& frames, const StftConfig& cfg,
                          std::size_t channel);

// Synthesizes every channel of the frames.
MultichannelSignal istft_all(const FrameSequence& frames, const StftConfig& cfg,
                             int sample_rate);

}  // namespace litebeam
