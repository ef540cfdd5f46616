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

#include "litebeam/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <utility>

namespace litebeam {

namespace {

fftw_plan as_plan(void* p) { return static_cast<fftw_plan>(p); }

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  if (size == 0) throw Error("fft size must be positive");
  const int n = static_cast<int>(size);
  time_ = fftw_alloc_real(size);
  auto* freq = fftw_alloc_complex(num_bins());
  freq_ = freq;
  forward_plan_ = fftw_plan_dft_r2c_1d(n, time_, freq, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, freq, time_, FFTW_ESTIMATE);
  if (!time_ || !freq_ || !forward_plan_ || !inverse_plan_) {
    release();
    throw Error("failed to create FFT plan");
  }
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : size_(std::exchange(other.size_, 0)),
      time_(std::exchange(other.time_, nullptr)),
      freq_(std::exchange(other.freq_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
  if (this != &other) {
    release();
    size_ = std::exchange(other.size_, 0);
    time_ = std::exchange(other.time_, nullptr);
    freq_ = std::exchange(other.freq_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
  }
  return *this;
}

void RealFft::release() noexcept {
  if (forward_plan_) fftw_destroy_plan(as_plan(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(as_plan(inverse_plan_));
  if (time_) fftw_free(time_);
  if (freq_) fftw_free(freq_);
  forward_plan_ = inverse_plan_ = nullptr;
  time_ = nullptr;
  freq_ = nullptr;
}

void RealFft::forward(std::span<const double> input, std::span<Complex> output) {
  if (input.size() != size_ || output.size() != num_bins())
    throw Error("fft buffer size mismatch");
  std::copy(input.begin(), input.end(), time_);
  fftw_execute(as_plan(forward_plan_));
  const auto* freq = static_cast<const fftw_complex*>(freq_);
  for (std::size_t k = 0; k < output.size(); ++k)
    output[k] = Complex(freq[k][0], freq[k][1]);
}

void RealFft::inverse(std::span<const Complex> input, std::span<double> output) {
  if (input.size() != num_bins() || output.size() != size_)
    throw Error("fft buffer size mismatch");
  auto* freq = static_cast<fftw_complex*>(freq_);
  for (std::size_t k = 0; k < input.size(); ++k) {
    freq[k][0] = input[k].real();
    freq[k][1] = input[k].imag();
  }
  // c2r ignores the imaginary parts of DC and Nyquist.
  fftw_execute(as_plan(inverse_plan_));
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t n = 0; n < size_; ++n) output[n] = time_[n] * scale;
}

}  // namespace litebeam
