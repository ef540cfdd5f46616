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

#include <string>

#include "litebeam/signal.hpp"

namespace litebeam {

enum class WavEncoding { Pcm16, Float32 };

// RIFF/WAVE reader for interleaved PCM16 or IEEE float32 data with any
// channel count. PCM16 samples are scaled to [-1, 1) by 1/32768.
MultichannelSignal read_wav(const std::string& path);

// Writes to a temporary sibling file and renames it into place. PCM16 output
// is rounded and clipped to the 16-bit range.
void write_wav(const std::string& path, const MultichannelSignal& signal,
               WavEncoding encoding = WavEncoding::Float32);

}  // namespace litebeam
