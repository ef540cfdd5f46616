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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "litebeam/signal.hpp"

namespace testutil {

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

inline litebeam::MultichannelSignal random_signal(std::size_t channels, std::size_t n,
                                                  std::uint64_t seed, int rate = 16000) {
  litebeam::MultichannelSignal s(channels, n, rate);
  for (std::size_t c = 0; c < channels; ++c) s.channels[c] = gaussian(n, seed * 131 + c);
  return s;
}

// Sum of cosines at integer multiples of rate / period, so that the signal is
// exactly periodic with the given period.
inline std::vector<double> periodic_multitone(std::size_t n, std::size_t period,
                                              const std::vector<std::size_t>& harmonics,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * 3.14159265358979323846);
  std::vector<double> x(n, 0.0);
  for (auto h : harmonics) {
    const double p = ph(rng);
    for (std::size_t i = 0; i < n; ++i)
      x[i] += std::cos(2.0 * 3.14159265358979323846 * static_cast<double>(h * i) /
                           static_cast<double>(period) + p);
  }
  return x;
}

inline double power_db(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return 10.0 * std::log10(e / static_cast<double>(x.size()));
}

// A fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("litebeam-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(++counter));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
