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

#ifndef ROOMVERB_METRICS_H_
#define ROOMVERB_METRICS_H_

#include <cstddef>
#include <vector>

#include "roomverb/core.h"

namespace roomverb {

// Lower clamp for energy decay values; replaces -inf once the remaining
// energy is exactly zero.
inline constexpr double kEdcFloorDb = -120.0;

// Half-width of the window around the direct arrival counted as direct
// energy.
inline constexpr double kDirectWindowSeconds = 0.0025;

// Relative threshold (of the peak magnitude) that marks the direct arrival.
inline constexpr double kOnsetThreshold = 0.5;

struct AcousticMetrics {
  double rt60 = 0.0;        // s
  double drr = 0.0;         // dB
  double onset_time = 0.0;  // s
};

// Line-fit window on the energy decay curve, in dB relative to the total
// energy. The default is the T30 window (-5 to -35 dB, extrapolated to
// 60 dB). {0, -60, extrapolate = false} fits the full 60 dB range.
struct DecayFitConfig {
  double fit_start_db = -5.0;
  double fit_end_db = -35.0;
  // When false the result is the time the fitted line takes to cross the
  // window itself, (fit_start_db - fit_end_db) / -slope, instead of 60 dB.
  bool extrapolate = true;

  void Validate() const;
};

// Backward-integrated, normalized energy in dB:
// EDC[i] = 10 log10(sum_{j>=i} x[j]^2 / sum_j x[j]^2), clamped at
// kEdcFloorDb. Throws kSilentInput for an all-zero response.
std::vector<double> EnergyDecayCurve(const ImpulseResponse& ir);

// Reverberation time from a least-squares line over the configured EDC
// window. Throws kInsufficientDecay if fewer than two EDC samples fall
// inside the window, kSilentInput for an all-zero response.
double EstimateRt60(const ImpulseResponse& ir, const DecayFitConfig& cfg = {});

// Index of the first sample with |x| >= kOnsetThreshold * max|x|.
std::size_t DetectOnset(const ImpulseResponse& ir);

// Direct-to-reverberant ratio in dB. Direct energy is the sum of x^2 over
// [onset - C, onset + C] (clamped), reverberant energy the sum over
// (onset + C, end], with C = kDirectWindowSeconds rounded to samples.
// Throws kSilentTail when the reverberant window carries no energy.
double ComputeDrr(const ImpulseResponse& ir);

// RT60, DRR and onset time together.
AcousticMetrics MeasureMetrics(const ImpulseResponse& ir,
                               const DecayFitConfig& cfg = {});

// Sabine estimate 0.1611 * V / (S * a).
double SabineRt60(const RoomSpec& room);

}  // namespace roomverb

#endif  // ROOMVERB_METRICS_H_
