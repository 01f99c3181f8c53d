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

#ifndef ROOMVERB_CORE_H_
#define ROOMVERB_CORE_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace roomverb {

// Sample rate used for every generated impulse response.
inline constexpr int kCanonicalSampleRate = 48000;

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Position&) const = default;
};

double Distance(const Position& a, const Position& b);

// Rectangular room with uniform wall absorption.
struct RoomSpec {
  std::array<double, 3> dimensions{};  // Lx, Ly, Lz in meters.
  double absorption = 0.1;             // Average coefficient in (0, 1].
  double speed_of_sound = 343.0;       // m/s.

  // Throws kInvalidArgument when any invariant is violated.
  void Validate() const;

  double Volume() const;
  double SurfaceArea() const;

  // True when |p| lies strictly inside the room on every axis.
  bool Contains(const Position& p) const;
};

namespace internal {
struct ImpulseResponseTag {};
struct MonoSignalTag {};
}  // namespace internal

// Finite, non-empty sample buffer with a positive integer sample rate.
// Amplitude 1.0 is full scale. The tag separates system responses from
// audio so the two cannot be mixed up at call sites.
template <typename Tag>
class SampledBuffer {
 public:
  SampledBuffer(std::vector<double> samples, int sample_rate);

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& vector() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double duration() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  bool operator==(const SampledBuffer&) const = default;

 private:
  std::vector<double> samples_;
  int sample_rate_;
};

using ImpulseResponse = SampledBuffer<internal::ImpulseResponseTag>;
using MonoSignal = SampledBuffer<internal::MonoSignalTag>;

extern template class SampledBuffer<internal::ImpulseResponseTag>;
extern template class SampledBuffer<internal::MonoSignalTag>;

inline ImpulseResponse AsImpulseResponse(const MonoSignal& s) {
  return ImpulseResponse(s.vector(), s.sample_rate());
}
inline MonoSignal AsMonoSignal(const ImpulseResponse& ir) {
  return MonoSignal(ir.vector(), ir.sample_rate());
}

// Throws kRateMismatch unless both rates are equal.
void RequireSameRate(int a, int b);

// result[i] = a[i] + scale * b[i - offset], with length
// max(len(a), offset + len(b)).
ImpulseResponse Mix(const ImpulseResponse& a, const ImpulseResponse& b,
                    std::size_t offset, double scale);

// Nearest sample index for a time in seconds (half away from zero).
std::size_t SecondsToSamples(double seconds, int sample_rate);

double Energy(std::span<const double> samples);

}  // namespace roomverb

#endif  // ROOMVERB_CORE_H_
