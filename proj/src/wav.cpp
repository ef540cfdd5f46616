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

#include "litebeam/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <vector>

namespace litebeam {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

std::string describe(std::uint16_t format, std::uint16_t bits) {
  std::string name = format == kFormatPcm     ? "PCM"
                     : format == kFormatFloat ? "IEEE float"
                                              : "format tag " + std::to_string(format);
  return name + " " + std::to_string(bits) + "-bit";
}

}  // namespace

MultichannelSignal read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open WAV file '" + path + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  const auto parse_error = [&](const std::string& what) {
    return Error("WAV parse error in '" + path + "': " + what);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw parse_error("missing RIFF/WAVE header");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = get_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) throw parse_error("truncated fmt chunk");
      format = get_u16(bytes.data() + body);
      channels = get_u16(bytes.data() + body + 2);
      rate = get_u32(bytes.data() + body + 4);
      bits = get_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible) {
        if (size < 26) throw parse_error("truncated extensible fmt chunk");
        format = get_u16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size()) throw parse_error("truncated data chunk");
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw parse_error("missing fmt chunk");
  if (!data) throw parse_error("missing data chunk");
  if (channels == 0 || rate == 0) throw parse_error("invalid channel count or rate");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw Error("unsupported WAV encoding: " + describe(format, bits));

  const std::size_t width = bits / 8;
  const std::size_t frame_bytes = width * channels;
  if (data_size % frame_bytes != 0) throw parse_error("data size is not a whole number of frames");
  const std::size_t num_samples = data_size / frame_bytes;

  MultichannelSignal signal(channels, num_samples, static_cast<int>(rate));
  for (std::size_t i = 0; i < num_samples; ++i) {
    for (std::size_t ch = 0; ch < channels; ++ch) {
      const std::uint8_t* p = data + i * frame_bytes + ch * width;
      if (pcm16) {
        const auto v = static_cast<std::int16_t>(get_u16(p));
        signal.channels[ch][i] = static_cast<double>(v) / 32768.0;
      } else {
        const std::uint32_t raw = get_u32(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        signal.channels[ch][i] = static_cast<double>(v);
      }
    }
  }
  return signal;
}

void write_wav(const std::string& path, const MultichannelSignal& signal,
               WavEncoding encoding) {
  signal.validate();
  if (signal.num_channels() == 0) throw Error("cannot write a WAV file with no channels");
  const std::uint16_t channels = static_cast<std::uint16_t>(signal.num_channels());
  const std::uint16_t bits = encoding == WavEncoding::Pcm16 ? 16 : 32;
  const std::uint16_t block = static_cast<std::uint16_t>(channels * bits / 8);
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(signal.num_samples() * block);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::Pcm16 ? kFormatPcm : kFormatFloat);
  put_u16(out, channels);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate) * block);
  put_u16(out, block);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (std::size_t i = 0; i < signal.num_samples(); ++i) {
    for (std::size_t ch = 0; ch < channels; ++ch) {
      const double v = signal.channels[ch][i];
      if (encoding == WavEncoding::Pcm16) {
        const double q = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
      } else {
        const float f = static_cast<float>(v);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof raw);
        put_u32(out, raw);
      }
    }
  }

  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write WAV file '" + path + "'");
    file.write(reinterpret_cast<const char*>(out.data()),
               static_cast<std::streamsize>(out.size()));
    if (!file) throw Error("failed writing WAV file '" + path + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace litebeam
