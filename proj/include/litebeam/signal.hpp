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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace litebeam {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// All recoverable failures in the library surface as this exception type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Time-domain samples, one vector per channel.
struct MultichannelSignal {
  std::vector<std::vector<double>> channels;
  int sample_rate = 16000;

  MultichannelSignal() = default;
  MultichannelSignal(std::size_t num_channels, std::size_t num_samples,
                     int rate = 16000)
      : channels(num_channels, std::vector<double>(num_samples, 0.0)),
        sample_rate(rate) {}

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }

  // Throws Error on ragged channels, non-positive rate or non-finite samples.
  void validate() const;

  // Selects a subset of channels in the given order.
  MultichannelSignal select(const std::vector<std::size_t>& indices) const;
};

// One STFT frame: per-channel half spectra (K = fft_size / 2 + 1 bins).
struct SpectroFrame {
  std::vector<std::vector<Complex>> bins;  // bins[channel][k]
  std::size_t frame_index = 0;
  double hz_per_bin = 0.0;

  std::size_t num_channels() const { return bins.size(); }
  std::size_t num_bins() const { return bins.empty() ? 0 : bins.front().size(); }
  double bin_hz(std::size_t k) const { return hz_per_bin * static_cast<double>(k); }
};

using FrameSequence = std::vector<SpectroFrame>;

// Keeps only the listed channels of every frame, in the given order.
FrameSequence select_channels(const FrameSequence& frames,
                              const std::vector<std::size_t>& indices);

// Sum of squares over one channel.
double energy(const std::vector<double>& x);

}  // namespace litebeam
