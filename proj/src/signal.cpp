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

#include "litebeam/signal.hpp"

#include <cmath>

namespace litebeam {

void MultichannelSignal::validate() const {
  if (sample_rate <= 0) throw Error("sample_rate must be positive");
  const std::size_t len = num_samples();
  for (const auto& ch : channels) {
    if (ch.size() != len) throw Error("channels have different lengths");
    for (double v : ch)
      if (!std::isfinite(v)) throw Error("signal contains non-finite samples");
  }
}

MultichannelSignal MultichannelSignal::select(const std::vector<std::size_t>& indices) const {
  MultichannelSignal out;
  out.sample_rate = sample_rate;
  for (auto i : indices) {
    if (i >= channels.size()) throw Error("channel index out of range");
    out.channels.push_back(channels[i]);
  }
  return out;
}

FrameSequence select_channels(const FrameSequence& frames,
                              const std::vector<std::size_t>& indices) {
  FrameSequence out;
  out.reserve(frames.size());
  for (const auto& f : frames) {
    SpectroFrame g;
    g.frame_index = f.frame_index;
    g.hz_per_bin = f.hz_per_bin;
    for (auto i : indices) {
      if (i >= f.num_channels()) throw Error("channel index out of range");
      g.bins.push_back(f.bins[i]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

double energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

}  // namespace litebeam
