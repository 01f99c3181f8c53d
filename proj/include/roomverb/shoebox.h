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

#ifndef ROOMVERB_SHOEBOX_H_
#define ROOMVERB_SHOEBOX_H_

#include <cstddef>
#include <vector>

#include "roomverb/core.h"

namespace roomverb {

// Boundary between early reflections and late reverberation, measured from
// the direct arrival.
inline constexpr double kEarlyReflectionCutoff = 0.080;

struct ImageSourceConfig {
  int max_order = 60;
  double duration = 2.0;  // s
  int sample_rate = kCanonicalSampleRate;

  void Validate() const;
};

// One specular path from an image source to the listener.
struct Arrival {
  double delay = 0.0;       // s, exact path length / c
  std::size_t sample = 0;   // nearest sample index
  double amplitude = 0.0;   // rho^order / r, r in meters
  int order = 0;            // total wall reflections

  bool operator==(const Arrival&) const = default;
};

// All image-source arrivals with total reflection order <= max_order that
// land inside the configured duration. Images are visited in a fixed
// lexicographic order, so the sequence is reproducible.
//
// Throws kPositionOutsideRoom unless both points are strictly inside the
// room, kCoincidentSourceListener when they coincide.
std::vector<Arrival> EnumerateArrivals(const RoomSpec& room,
                                       const Position& source,
                                       const Position& listener,
                                       const ImageSourceConfig& cfg = {});

// Smallest max_order that includes every image source whose path fits in
// |duration|. Orders below this truncate the late tail.
int CompleteOrder(const RoomSpec& room, double duration);

// Reference impulse response of a shoebox room: every arrival from
// EnumerateArrivals is summed into the nearest sample. Walls share the
// pressure reflection coefficient sqrt(1 - absorption).
ImpulseResponse GenerateImpulseResponse(const RoomSpec& room,
                                        const Position& source,
                                        const Position& listener,
                                        const ImageSourceConfig& cfg = {});

// Early part of |full|: keeps samples before onset + cutoff (at least up to
// and including the onset sample). Responses shorter than that are returned
// unchanged. Throws kSilentInput for an all-zero response.
ImpulseResponse EarlyPart(const ImpulseResponse& full,
                          double cutoff = kEarlyReflectionCutoff);

}  // namespace roomverb

#endif  // ROOMVERB_SHOEBOX_H_
