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

#include "roomverb/metrics.h"

#include <algorithm>
#include <cmath>

#include "roomverb/error.h"

namespace roomverb {
namespace {

constexpr double kSabineConstant = 0.1611;  // s/m

double PeakMagnitude(const ImpulseResponse& ir) {
  double peak = 0.0;
  for (double v : ir.samples()) peak = std::max(peak, std::abs(v));
  return peak;
}

}  // namespace

void DecayFitConfig::Validate() const {
  if (!(fit_end_db < fit_start_db && fit_start_db <= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "decay fit window requires fit_end_db < fit_start_db <= 0");
  }
}

std::vector<double> EnergyDecayCurve(const ImpulseResponse& ir) {
  const auto x = ir.samples();
  std::vector<double> remaining(x.size());
  double acc = 0.0;
  for (std::size_t i = x.size(); i-- > 0;) {
    acc += x[i] * x[i];
    remaining[i] = acc;
  }
  const double total = acc;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kSilentInput, "impulse response has no energy");
  }
  std::vector<double> edc(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double db =
        remaining[i] > 0.0 ? 10.0 * std::log10(remaining[i] / total) : kEdcFloorDb;
    edc[i] = std::max(db, kEdcFloorDb);
  }
  // Rounding in the partial sums must not break monotonicity.
  edc[0] = 0.0;
  for (std::size_t i = 1; i < edc.size(); ++i) {
    edc[i] = std::min(edc[i], edc[i - 1]);
  }
  return edc;
}

double EstimateRt60(const ImpulseResponse& ir, const DecayFitConfig& cfg) {
  cfg.Validate();
  const std::vector<double> edc = EnergyDecayCurve(ir);

  const auto first_at_or_below = [&](double level) {
    return static_cast<std::size_t>(
        std::find_if(edc.begin(), edc.end(),
                     [level](double v) { return v <= level; }) -
        edc.begin());
  };
  const std::size_t begin = first_at_or_below(cfg.fit_start_db);
  std::size_t end = begin;
  while (end < edc.size() && edc[end] > cfg.fit_end_db) ++end;
  if (end >= edc.size() || end - begin < 2) {
    throw Error(ErrorCode::kInsufficientDecay,
                "energy decay curve does not span the fit window");
  }

  // Least squares on (t, dB) with t centered for conditioning.
  const double rate = ir.sample_rate();
  const double n = static_cast<double>(end - begin);
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    mean_t += i / rate;
    mean_y += edc[i];
  }
  mean_t /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double dt = i / rate - mean_t;
    sxx += dt * dt;
    sxy += dt * (edc[i] - mean_y);
  }
  const double slope = sxy / sxx;  // dB per second
  if (!(slope < 0.0)) {
    throw Error(ErrorCode::kInsufficientDecay, "decay slope is not negative");
  }
  const double span_db =
      cfg.extrapolate ? 60.0 : cfg.fit_start_db - cfg.fit_end_db;
  return -span_db / slope;
}

std::size_t DetectOnset(const ImpulseResponse& ir) {
  const double peak = PeakMagnitude(ir);
  if (!(peak > 0.0)) {
    throw Error(ErrorCode::kSilentInput, "impulse response has no energy");
  }
  const double threshold = kOnsetThreshold * peak;
  const auto x = ir.samples();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) >= threshold) return i;
  }
  return 0;  // Unreachable: the peak itself passes the threshold.
}

double ComputeDrr(const ImpulseResponse& ir) {
  const std::size_t onset = DetectOnset(ir);
  const std::size_t half_window =
      SecondsToSamples(kDirectWindowSeconds, ir.sample_rate());
  const auto x = ir.samples();
  const std::size_t direct_begin = onset > half_window ? onset - half_window : 0;
  const std::size_t direct_end = std::min(onset + half_window + 1, x.size());

  const double direct = Energy(x.subspan(direct_begin, direct_end - direct_begin));
  const double reverberant = Energy(x.subspan(direct_end));
  if (!(reverberant > 0.0)) {
    throw Error(ErrorCode::kSilentTail,
                "no energy after the direct window; DRR is unbounded");
  }
  return 10.0 * std::log10(direct / reverberant);
}

AcousticMetrics MeasureMetrics(const ImpulseResponse& ir,
                               const DecayFitConfig& cfg) {
  AcousticMetrics m;
  m.rt60 = EstimateRt60(ir, cfg);
  m.drr = ComputeDrr(ir);
  m.onset_time = static_cast<double>(DetectOnset(ir)) / ir.sample_rate();
  return m;
}

double SabineRt60(const RoomSpec& room) {
  room.Validate();
  return kSabineConstant * room.Volume() /
         (room.SurfaceArea() * room.absorption);
}

}  // namespace roomverb
