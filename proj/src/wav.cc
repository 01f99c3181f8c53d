/*
Copyright 2026 The roomverb Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "roomverb/wav.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "roomverb/error.h"

namespace roomverb {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t LoadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t LoadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void StoreU16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void StoreU32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<unsigned char>((v >> shift) & 0xFF));
  }
}

void StoreTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

[[noreturn]] void Corrupt(const std::filesystem::path& path,
                          const std::string& what) {
  throw Error(ErrorCode::kCorruptFile, path.string() + ": " + what);
}

}  // namespace

MonoSignal ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  }
  const std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Corrupt(path, "not a RIFF/WAVE file");
  }

  std::optional<FormatChunk> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* header = bytes.data() + pos;
    const std::size_t chunk_size = LoadU32(header + 4);
    const std::size_t body = pos + 8;
    if (chunk_size > bytes.size() - body) {
      Corrupt(path, "truncated chunk");
    }
    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (chunk_size < 16) Corrupt(path, "fmt chunk too short");
      const unsigned char* f = bytes.data() + body;
      FormatChunk parsed;
      parsed.format = LoadU16(f);
      parsed.channels = LoadU16(f + 2);
      parsed.sample_rate = LoadU32(f + 4);
      parsed.bits_per_sample = LoadU16(f + 14);
      if (parsed.format == kFormatExtensible) {
        // The first two bytes of the sub-format GUID carry the format tag.
        if (chunk_size < 26) Corrupt(path, "extensible fmt chunk too short");
        parsed.format = LoadU16(f + 24);
      }
      fmt = parsed;
    } else if (std::memcmp(header, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }

  if (!fmt) Corrupt(path, "missing fmt chunk");
  if (data == nullptr) Corrupt(path, "missing data chunk");
  if (fmt->channels != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": expected mono, found " +
                    std::to_string(fmt->channels) + " channels");
  }
  if (fmt->sample_rate == 0) Corrupt(path, "zero sample rate");

  std::vector<double> samples;
  if (fmt->format == kFormatIeeeFloat && fmt->bits_per_sample == 32) {
    if (data_size % 4 != 0) Corrupt(path, "partial float sample");
    samples.resize(data_size / 4);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      samples[i] = std::bit_cast<float>(LoadU32(data + 4 * i));
    }
  } else if (fmt->format == kFormatPcm && fmt->bits_per_sample == 16) {
    if (data_size % 2 != 0) Corrupt(path, "partial PCM sample");
    samples.resize(data_size / 2);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto v = static_cast<std::int16_t>(LoadU16(data + 2 * i));
      samples[i] = v / 32768.0;
    }
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": unsupported encoding (format " +
                    std::to_string(fmt->format) + ", " +
                    std::to_string(fmt->bits_per_sample) + " bits)");
  }
  if (samples.empty()) Corrupt(path, "no samples");
  for (double v : samples) {
    if (!std::isfinite(v)) Corrupt(path, "non-finite sample");
  }
  return MonoSignal(std::move(samples), static_cast<int>(fmt->sample_rate));
}

void WriteWav(const MonoSignal& signal, const std::filesystem::path& path) {
  const auto data_bytes = static_cast<std::uint32_t>(signal.size() * 4);
  std::vector<unsigned char> out;
  out.reserve(58 + data_bytes);

  StoreTag(out, "RIFF");
  StoreU32(out, 50 + data_bytes);
  StoreTag(out, "WAVE");

  StoreTag(out, "fmt ");
  StoreU32(out, 18);
  StoreU16(out, kFormatIeeeFloat);
  StoreU16(out, 1);
  StoreU32(out, static_cast<std::uint32_t>(signal.sample_rate()));
  StoreU32(out, static_cast<std::uint32_t>(signal.sample_rate()) * 4);
  StoreU16(out, 4);
  StoreU16(out, 32);
  StoreU16(out, 0);

  // Non-PCM formats carry a fact chunk with the frame count.
  StoreTag(out, "fact");
  StoreU32(out, 4);
  StoreU32(out, static_cast<std::uint32_t>(signal.size()));

  StoreTag(out, "data");
  StoreU32(out, data_bytes);
  for (double v : signal.samples()) {
    StoreU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw Error(ErrorCode::kIoError, "write failed for " + path.string());
  }
}

}  // namespace roomverb
