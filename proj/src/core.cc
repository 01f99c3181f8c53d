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

#include "roomverb/core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomverb/error.h"

namespace roomverb {

double Distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void RoomSpec::Validate() const {
  for (double d : dimensions) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "room dimensions must be positive and finite");
    }
  }
  if (!(absorption > 0.0 && absorption <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "absorption must lie in (0, 1], got " +
                    std::to_string(absorption));
  }
  if (!(speed_of_sound > 0.0) || !std::isfinite(speed_of_sound)) {
    throw Error(ErrorCode::kInvalidArgument, "speed of sound must be positive");
  }
}

double RoomSpec::Volume() const {
  return dimensions[0] * dimensions[1] * dimensions[2];
}

double RoomSpec::SurfaceArea() const {
  const auto& [lx, ly, lz] = dimensions;
  return 2.0 * (lx * ly + lx * lz + ly * lz);
}

bool RoomSpec::Contains(const Position& p) const {
  return p.x > 0.0 && p.x < dimensions[0] && p.y > 0.0 &&
         p.y < dimensions[1] && p.z > 0.0 && p.z < dimensions[2];
}

template <typename Tag>
SampledBuffer<Tag>::SampledBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
  if (samples_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sample buffer must not be empty");
  }
  if (!std::all_of(samples_.begin(), samples_.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample buffer contains NaN or Inf");
  }
}

template class SampledBuffer<internal::ImpulseResponseTag>;
template class SampledBuffer<internal::MonoSignalTag>;

void RequireSameRate(int a, int b) {
  if (a != b) {
    throw Error(ErrorCode::kRateMismatch, "sample rate mismatch: " +
                                              std::to_string(a) + " Hz vs " +
                                              std::to_string(b) + " Hz");
  }
}

ImpulseResponse Mix(const ImpulseResponse& a, const ImpulseResponse& b,
                    std::size_t offset, double scale) {
  RequireSameRate(a.sample_rate(), b.sample_rate());
  std::vector<double> out(std::max(a.size(), offset + b.size()), 0.0);
  std::copy(a.samples().begin(), a.samples().end(), out.begin());
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[offset + i] += scale * b[i];
  }
  return ImpulseResponse(std::move(out), a.sample_rate());
}

std::size_t SecondsToSamples(double seconds, int sample_rate) {
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) {
    throw Error(ErrorCode::kInvalidArgument,
                "time must be non-negative and finite");
  }
  return static_cast<std::size_t>(std::llround(seconds * sample_rate));
}

double Energy(std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  return sum;
}

}  // namespace roomverb
