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
#include <span>

#include "litebeam/signal.hpp"

namespace litebeam {

// Real-input DFT of a fixed length backed by FFTW. forward() computes the
// unnormalized half spectrum X[k] = sum_n x[n] exp(-j 2 pi k n / N);
// inverse() applies the 1/N scaling so inverse(forward(x)) == x.
//
// Plan creation is not thread-safe in FFTW; construct instances from one
// thread. A constructed instance is used by one thread at a time.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&& other) noexcept;
  RealFft& operator=(RealFft&& other) noexcept;

  std::size_t size() const { return size_; }
  std::size_t num_bins() const { return size_ / 2 + 1; }

  void forward(std::span<const double> input, std::span<Complex> output);
  void inverse(std::span<const Complex> input, std::span<double> output);

 private:
  void release() noexcept;

  std::size_t size_ = 0;
  double* time_ = nullptr;
  void* freq_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace litebeam
