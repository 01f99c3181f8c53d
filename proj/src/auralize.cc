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

#include "roomverb/auralize.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "roomverb/convolution.h"
#include "roomverb/error.h"
#include "roomverb/parallel.h"

namespace roomverb {
namespace {

// Path length must be a whole number of spacings to this relative accuracy.
constexpr double kIntervalTolerance = 1e-9;

}  // namespace

MonoSignal Convolve(const MonoSignal& dry, const ImpulseResponse& ir) {
  RequireSameRate(dry.sample_rate(), ir.sample_rate());
  return MonoSignal(LinearConvolve(dry.samples(), ir.samples()),
                    dry.sample_rate());
}

MonoSignal ApplyLevel(const MonoSignal& signal, double source_power_db) {
  const double gain =
      std::pow(10.0, (source_power_db - kFullScaleReferenceDb) / 20.0);
  std::vector<double> out(signal.samples().begin(), signal.samples().end());
  double peak = 0.0;
  for (double& v : out) {
    v *= gain;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 1.0) {
    std::clog << "warning: signal exceeds full scale after level adjustment "
              << "(peak " << peak << ")\n";
  }
  return MonoSignal(std::move(out), signal.sample_rate());
}

void WalkthroughSpec::Validate() const {
  if (!(spacing > 0.0) || !(speed > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "walkthrough spacing and speed must be positive");
  }
  if (!(crossfade >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "crossfade must be >= 0");
  }
  const double length = PathLength();
  if (!(length > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "walking path has zero length");
  }
  const double intervals = length / spacing;
  if (std::abs(intervals - std::round(intervals)) >
      kIntervalTolerance * std::max(1.0, intervals)) {
    throw Error(ErrorCode::kInvalidArgument,
                "path length must be an integer multiple of spacing");
  }
  if (crossfade > spacing / speed) {
    throw Error(ErrorCode::kInvalidArgument,
                "crossfade must not exceed the time per spacing step");
  }
}

double WalkthroughSpec::PathLength() const {
  return Distance(path_start, path_end);
}

std::size_t WalkthroughSpec::Intervals() const {
  return static_cast<std::size_t>(std::llround(PathLength() / spacing));
}

std::vector<Position> WalkthroughSpec::ListenerPositions() const {
  Validate();
  const std::size_t n = Intervals();
  std::vector<Position> out;
  out.reserve(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    const double f = static_cast<double>(m) / n;
    out.push_back({path_start.x + f * (path_end.x - path_start.x),
                   path_start.y + f * (path_end.y - path_start.y),
                   path_start.z + f * (path_end.z - path_start.z)});
  }
  return out;
}

double WalkthroughSpec::Duration() const { return PathLength() / speed; }

std::pair<double, double> EqualPowerGains(double t) {
  const double angle = std::clamp(t, 0.0, 1.0) * std::numbers::pi / 2.0;
  return {std::cos(angle), std::sin(angle)};
}

std::pair<double, double> CrossfadeGains(double t, double correlation) {
  const auto [out_gain, in_gain] = EqualPowerGains(t);
  const double c = std::clamp(correlation, 0.0, 1.0);
  const double norm = std::sqrt(1.0 + 2.0 * c * out_gain * in_gain);
  return {out_gain / norm, in_gain / norm};
}

double ResponseCorrelation(const ImpulseResponse& a, const ImpulseResponse& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double ab = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (!(aa > 0.0) || !(bb > 0.0)) return 0.0;
  return ab / std::sqrt(aa * bb);
}

WalkthroughRender RenderWalkthrough(const RoomSpec& room,
                                    const WalkthroughSpec& spec,
                                    const MonoSignal& dry,
                                    const IrProvider& provider) {
  room.Validate();
  spec.Validate();
  const std::vector<Position> positions = spec.ListenerPositions();
  if (!room.Contains(spec.source)) {
    throw Error(ErrorCode::kPositionOutsideRoom,
                "walkthrough source is not strictly inside the room");
  }
  for (std::size_t m = 0; m < positions.size(); ++m) {
    if (!room.Contains(positions[m])) {
      throw Error(ErrorCode::kPositionOutsideRoom,
                  "listener position " + std::to_string(m) +
                      " is not strictly inside the room");
    }
  }

  const int rate = dry.sample_rate();
  const std::size_t total = SecondsToSamples(spec.Duration(), rate);
  if (dry.size() < total) {
    throw Error(ErrorCode::kDrySignalTooShort,
                "dry signal is " + std::to_string(dry.duration()) +
                    " s; the walk needs " + std::to_string(spec.Duration()) +
                    " s");
  }

  std::vector<std::optional<ImpulseResponse>> irs(positions.size());
  ParallelFor(positions.size(), [&](std::size_t m) {
    irs[m] = provider(m, positions[m]);
    RequireSameRate(rate, irs[m]->sample_rate());
  });

  const std::size_t intervals = positions.size() - 1;
  const double step_time = spec.spacing / spec.speed;
  // boundaries[m] separates position m from m + 1.
  std::vector<std::size_t> boundaries(intervals);
  std::vector<double> correlations(intervals);
  for (std::size_t m = 0; m < intervals; ++m) {
    boundaries[m] = SecondsToSamples((m + 0.5) * step_time, rate);
    correlations[m] = ResponseCorrelation(*irs[m], *irs[m + 1]);
  }
  const std::size_t fade = std::min(SecondsToSamples(spec.crossfade, rate),
                                    SecondsToSamples(step_time, rate));
  const std::size_t fade_lead = fade / 2;

  // Windowed dry piece for position m and its first sample index.
  auto piece = [&](std::size_t m) {
    const std::size_t begin = m == 0 ? 0 : boundaries[m - 1] - fade_lead;
    const std::size_t end =
        m == intervals ? total : boundaries[m] - fade_lead + fade;
    std::vector<double> samples(dry.samples().begin() + begin,
                                dry.samples().begin() + end);
    if (m > 0) {
      const std::size_t z0 = boundaries[m - 1] - fade_lead;
      for (std::size_t t = 0; t < fade; ++t) {
        const double u = (t + 0.5) / fade;
        samples[z0 + t - begin] *= CrossfadeGains(u, correlations[m - 1]).second;
      }
    }
    if (m < intervals) {
      const std::size_t z0 = boundaries[m] - fade_lead;
      for (std::size_t t = 0; t < fade; ++t) {
        const double u = (t + 0.5) / fade;
        samples[z0 + t - begin] *= CrossfadeGains(u, correlations[m]).first;
      }
    }
    return std::pair{begin, std::move(samples)};
  };

  std::size_t out_len = total;
  for (const auto& ir : irs) {
    out_len = std::max(out_len, total + ir->size() - 1);
  }
  std::vector<double> out(out_len, 0.0);

  // Convolve in batches and overlap-add in position order.
  const std::size_t batch = static_cast<std::size_t>(WorkerCount());
  for (std::size_t first = 0; first < positions.size(); first += batch) {
    const std::size_t count = std::min(batch, positions.size() - first);
    std::vector<std::pair<std::size_t, std::vector<double>>> rendered(count);
    ParallelFor(count, [&](std::size_t k) {
      auto [begin, samples] = piece(first + k);
      rendered[k] = {begin, LinearConvolve(samples, irs[first + k]->samples())};
    });
    for (const auto& [begin, samples] : rendered) {
      for (std::size_t i = 0; i < samples.size(); ++i) out[begin + i] += samples[i];
    }
  }

  return WalkthroughRender{MonoSignal(std::move(out), rate), positions, total};
}

std::string_view IrMethodName(IrMethod method) {
  return method == IrMethod::kReference ? "reference" : "schroeder";
}

IrMethod ParseIrMethod(std::string_view name) {
  if (name == "reference") return IrMethod::kReference;
  if (name == "schroeder") return IrMethod::kSchroeder;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown method '" + std::string(name) +
                  "' (expected reference or schroeder)");
}

IrProvider MakeReferenceProvider(const RoomSpec& room, const Position& source,
                                 const ImageSourceConfig& cfg) {
  return [room, source, cfg](std::size_t, const Position& listener) {
    return GenerateImpulseResponse(room, source, listener, cfg);
  };
}

IrProvider MakeSchroederProvider(const RoomSpec& room, const Position& source,
                                 const ImageSourceConfig& cfg,
                                 const CalibrationResult& calibration,
                                 double early_cutoff) {
  return [room, source, cfg, calibration, early_cutoff](
             std::size_t, const Position& listener) {
    const ImpulseResponse full =
        GenerateImpulseResponse(room, source, listener, cfg);
    return ApplyCalibration(EarlyPart(full, early_cutoff), calibration);
  };
}

}  // namespace roomverb
