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

#include "roomverb/shoebox.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <tuple>

#include "roomverb/error.h"
#include "roomverb/metrics.h"

namespace roomverb {
namespace {

// Signed offset along one axis from the listener to image |index| of the
// source. Odd images are written symmetrically in source and listener so
// swapping the two yields bit-identical path lengths.
double AxisOffset(int index, double length, double source, double listener) {
  if (index % 2 == 0) {
    return index * length + (source - listener);
  }
  return (index + 1) * length - (source + listener);
}

void RequireInside(const RoomSpec& room, const Position& p, const char* what) {
  if (!room.Contains(p)) {
    throw Error(ErrorCode::kPositionOutsideRoom,
                std::string(what) + " (" + std::to_string(p.x) + ", " +
                    std::to_string(p.y) + ", " + std::to_string(p.z) +
                    ") is not strictly inside the room");
  }
}

}  // namespace

void ImageSourceConfig::Validate() const {
  if (max_order < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_order must be >= 0");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  }
  if (sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
}

std::vector<Arrival> EnumerateArrivals(const RoomSpec& room,
                                       const Position& source,
                                       const Position& listener,
                                       const ImageSourceConfig& cfg) {
  room.Validate();
  cfg.Validate();
  RequireInside(room, source, "source");
  RequireInside(room, listener, "listener");
  if (source == listener) {
    throw Error(ErrorCode::kCoincidentSourceListener,
                "source and listener coincide");
  }

  const auto length = static_cast<std::size_t>(
      std::llround(cfg.duration * cfg.sample_rate));
  const double max_distance =
      room.speed_of_sound * (static_cast<double>(length) + 0.5) / cfg.sample_rate;
  const double rho = std::sqrt(1.0 - room.absorption);
  std::vector<double> rho_pow(static_cast<std::size_t>(cfg.max_order) + 1);
  rho_pow[0] = 1.0;
  for (std::size_t n = 1; n < rho_pow.size(); ++n) {
    rho_pow[n] = rho_pow[n - 1] * rho;
  }

  const auto& [lx, ly, lz] = room.dimensions;
  const int n_max = cfg.max_order;
  std::vector<Arrival> arrivals;
  for (int i = -n_max; i <= n_max; ++i) {
    const double dx = AxisOffset(i, lx, source.x, listener.x);
    if (std::abs(dx) > max_distance) continue;
    const int rem_i = n_max - std::abs(i);
    for (int j = -rem_i; j <= rem_i; ++j) {
      const double dy = AxisOffset(j, ly, source.y, listener.y);
      if (std::hypot(dx, dy) > max_distance) continue;
      const int rem_j = rem_i - std::abs(j);
      for (int k = -rem_j; k <= rem_j; ++k) {
        const double dz = AxisOffset(k, lz, source.z, listener.z);
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        const double delay = r / room.speed_of_sound;
        const auto sample = static_cast<std::size_t>(
            std::llround(delay * cfg.sample_rate));
        if (sample >= length) continue;
        const int order = std::abs(i) + std::abs(j) + std::abs(k);
        arrivals.push_back(
            {delay, sample, rho_pow[static_cast<std::size_t>(order)] / r, order});
      }
    }
  }
  return arrivals;
}

int CompleteOrder(const RoomSpec& room, double duration) {
  room.Validate();
  const double reach = room.speed_of_sound * duration;
  int order = 0;
  // Image index n on an axis of length L is at least (|n| - 1) L away.
  for (double length : room.dimensions) {
    order += static_cast<int>(std::ceil(reach / length)) + 1;
  }
  return order;
}

ImpulseResponse GenerateImpulseResponse(const RoomSpec& room,
                                        const Position& source,
                                        const Position& listener,
                                        const ImageSourceConfig& cfg) {
  std::vector<Arrival> arrivals = EnumerateArrivals(room, source, listener, cfg);
  // Canonical summation order, so swapping source and listener (which only
  // permutes the lattice) gives bit-identical samples.
  std::sort(arrivals.begin(), arrivals.end(),
            [](const Arrival& a, const Arrival& b) {
              return std::tie(a.sample, a.delay, a.order) <
                     std::tie(b.sample, b.delay, b.order);
            });
  const auto length = static_cast<std::size_t>(
      std::llround(cfg.duration * cfg.sample_rate));
  std::vector<double> samples(std::max<std::size_t>(length, 1), 0.0);
  for (const Arrival& a : arrivals) samples[a.sample] += a.amplitude;
  return ImpulseResponse(std::move(samples), cfg.sample_rate);
}

ImpulseResponse EarlyPart(const ImpulseResponse& full, double cutoff) {
  if (!(cutoff >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cutoff must be non-negative");
  }
  const std::size_t onset = DetectOnset(full);
  const std::size_t keep = std::max(
      onset + SecondsToSamples(cutoff, full.sample_rate()), onset + 1);
  if (keep >= full.size()) return full;
  std::vector<double> samples(full.samples().begin(),
                              full.samples().begin() + keep);
  return ImpulseResponse(std::move(samples), full.sample_rate());
}

}  // namespace roomverb
