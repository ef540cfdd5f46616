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

#include "litebeam/stft.hpp"

#include <algorithm>
#include <cmath>

#include "litebeam/fft.hpp"

namespace litebeam {

Window parse_window(const std::string& name) {
  if (name == "sqrt-hann") return Window::SqrtHann;
  if (name == "rectangular") return Window::Rectangular;
  throw Error("unknown window '" + name + "'");
}

std::string window_name(Window window) {
  return window == Window::SqrtHann ? "sqrt-hann" : "rectangular";
}

std::vector<double> make_window(const StftConfig& cfg) {
  std::vector<double> w(cfg.fft_size, 1.0);
  if (cfg.window == Window::SqrtHann) {
    const double n = static_cast<double>(cfg.fft_size);
    for (std::size_t i = 0; i < cfg.fft_size; ++i)
      w[i] = std::sin(kPi * static_cast<double>(i) / n);
  }
  return w;
}

namespace {

// Overlap-added squared window over one hop period.
std::vector<double> ola_profile(const StftConfig& cfg) {
  const auto w = make_window(cfg);
  std::vector<double> acc(cfg.hop, 0.0);
  for (std::size_t i = 0; i < cfg.fft_size; ++i) acc[i % cfg.hop] += w[i] * w[i];
  return acc;
}

}  // namespace

void StftConfig::validate() const {
  if (fft_size < 2 || fft_size % 2 != 0) throw Error("fft_size must be even and >= 2");
  if (hop == 0 || hop > fft_size) throw Error("hop must satisfy 0 < hop <= fft_size");
  const auto acc = ola_profile(*this);
  for (double v : acc) {
    if (std::abs(v - acc.front()) > 1e-9 * std::abs(acc.front()) || acc.front() <= 0.0)
      throw Error("window '" + window_name(window) +
                  "' does not satisfy overlap-add at hop " + std::to_string(hop));
  }
}

double overlap_add_gain(const StftConfig& cfg) { return ola_profile(cfg).front(); }

FrameSequence stft(const MultichannelSignal& signal, const StftConfig& cfg) {
  cfg.validate();
  signal.validate();
  const std::size_t len = signal.num_samples();
  if (len < cfg.fft_size) throw Error("insufficient samples");
  const std::size_t num_frames = (len - cfg.fft_size) / cfg.hop + 1;
  const auto window = make_window(cfg);
  RealFft fft(cfg.fft_size);
  std::vector<double> buf(cfg.fft_size);

  FrameSequence frames(num_frames);
  const double hz_per_bin =
      static_cast<double>(signal.sample_rate) / static_cast<double>(cfg.fft_size);
  for (std::size_t t = 0; t < num_frames; ++t) {
    auto& frame = frames[t];
    frame.frame_index = t;
    frame.hz_per_bin = hz_per_bin;
    frame.bins.assign(signal.num_channels(), std::vector<Complex>(cfg.num_bins()));
    for (std::size_t ch = 0; ch < signal.num_channels(); ++ch) {
      const auto& x = signal.channels[ch];
      for (std::size_t n = 0; n < cfg.fft_size; ++n) buf[n] = x[t * cfg.hop + n] * window[n];
      fft.forward(buf, frame.bins[ch]);
    }
  }
  return frames;
}

FrameSequence stft_padded(const MultichannelSignal& signal, const StftConfig& cfg) {
  cfg.validate();
  signal.validate();
  const std::size_t lead = cfg.fft_size - cfg.hop;
  std::size_t len = signal.num_samples() + 2 * lead;
  if (len < cfg.fft_size) len = cfg.fft_size;
  len += (cfg.hop - (len - cfg.fft_size) % cfg.hop) % cfg.hop;
  MultichannelSignal padded(signal.num_channels(), len);
  padded.sample_rate = signal.sample_rate;
  for (std::size_t ch = 0; ch < signal.num_channels(); ++ch)
    std::copy(signal.channels[ch].begin(), signal.channels[ch].end(), padded.channels[ch].begin() + lead);
  return stft(padded, cfg);
}

std::vector<double> istft(const FrameSequence& frames, const StftConfig& cfg,
                          std::size_t channel) {
  cfg.validate();
  if (frames.empty()) throw Error("istft needs at least one frame");
  const auto window = make_window(cfg);
  const double gain = overlap_add_gain(cfg);
  RealFft fft(cfg.fft_size);
  std::vector<double> buf(cfg.fft_size);
  std::vector<double> out((frames.size() - 1) * cfg.hop + cfg.fft_size, 0.0);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& frame = frames[t];
    if (frame.num_bins() != cfg.num_bins()) throw Error("config mismatch");
    if (channel >= frame.num_channels()) throw Error("istft channel out of range");
    fft.inverse(frame.bins[channel], buf);
    for (std::size_t n = 0; n < cfg.fft_size; ++n)
      out[t * cfg.hop + n] += buf[n] * window[n] / gain;
  }
  return out;
}

MultichannelSignal istft_all(const FrameSequence& frames, const StftConfig& cfg,
                             int sample_rate) {
  if (frames.empty()) throw Error("istft needs at least one frame");
  MultichannelSignal out;
  out.sample_rate = sample_rate;
  for (std::size_t ch = 0; ch < frames.front().num_channels(); ++ch)
    out.channels.push_back(istft(frames, cfg, ch));
  return out;
}

}  // namespace litebeam
