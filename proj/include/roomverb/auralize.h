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

#ifndef ROOMVERB_AURALIZE_H_
#define ROOMVERB_AURALIZE_H_

#include <cstddef>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "roomverb/calibration.h"
#include "roomverb/core.h"
#include "roomverb/schroeder.h"
#include "roomverb/shoebox.h"

namespace roomverb {

// Level that corresponds to a full-scale (1.0) sample.
inline constexpr double kFullScaleReferenceDb = 94.0;

// Full linear convolution of dry audio with an impulse response.
// Throws kRateMismatch.
MonoSignal Convolve(const MonoSignal& dry, const ImpulseResponse& ir);

// Scales by 10^((source_power_db - kFullScaleReferenceDb) / 20). Nothing is
// clipped; a warning goes to std::clog when any sample exceeds full scale.
MonoSignal ApplyLevel(const MonoSignal& signal, double source_power_db);

// Listener walking a straight segment at constant speed while one source
// plays. Listener positions are spaced |spacing| meters apart, both ends
// included.
struct WalkthroughSpec {
  Position path_start;
  Position path_end;
  double spacing = 0.1;     // m
  double speed = 1.39;      // m/s
  Position source;
  double crossfade = 0.020; // s

  // Throws kInvalidArgument unless spacing and speed are positive and the
  // path length is an integer multiple of spacing.
  void Validate() const;

  double PathLength() const;
  std::size_t Intervals() const;
  std::vector<Position> ListenerPositions() const;
  // Time to walk the path, path length / speed.
  double Duration() const;
};

// Equal-power crossfade law at fade position t in [0, 1]:
// (cos(pi t / 2), sin(pi t / 2)), so g1^2 + g2^2 = 1.
std::pair<double, double> EqualPowerGains(double t);

// Equal-power gains renormalized for signals with normalized correlation
// |correlation| (clamped to [0, 1]) so that g1^2 + g2^2 + 2 c g1 g2 = 1.
// c = 0 is the plain equal-power law; c = 1 gives g1 + g2 = 1, which is
// transparent for identical material.
std::pair<double, double> CrossfadeGains(double t, double correlation);

// Normalized zero-lag inner product <a, b> / (|a| |b|) over the common
// length; 0 when either response is silent there.
double ResponseCorrelation(const ImpulseResponse& a, const ImpulseResponse& b);

struct WalkthroughRender {
  MonoSignal audio;
  std::vector<Position> positions;
  // Samples of dry material used: round(Duration() * rate). The remainder
  // of |audio| is the reverberant tail.
  std::size_t pre_tail_samples = 0;
};

// Supplies the impulse response for listener position |index|.
using IrProvider =
    std::function<ImpulseResponse(std::size_t index, const Position& listener)>;

// The listener passes position m at time m * spacing / speed. Dry audio
// between consecutive midpoints is assigned to the nearer position, each
// piece is convolved with that position's response, and the pieces are
// overlap-added so reverberation rings across boundaries. Around each
// boundary the two pieces overlap for |crossfade| seconds using
// CrossfadeGains with the correlation of the two responses.
//
// Throws kPositionOutsideRoom, kRateMismatch, kDrySignalTooShort.
WalkthroughRender RenderWalkthrough(const RoomSpec& room,
                                    const WalkthroughSpec& spec,
                                    const MonoSignal& dry,
                                    const IrProvider& provider);

enum class IrMethod { kReference, kSchroeder };

std::string_view IrMethodName(IrMethod method);
// Accepts "reference" or "schroeder"; throws kInvalidArgument otherwise.
IrMethod ParseIrMethod(std::string_view name);

// Shoebox reference responses along the walk.
IrProvider MakeReferenceProvider(const RoomSpec& room, const Position& source,
                                 const ImageSourceConfig& cfg);

// Calibrated reverberator responses along the walk: each position's early
// part is spliced with |calibration|'s tail at its own direct onset.
IrProvider MakeSchroederProvider(const RoomSpec& room, const Position& source,
                                 const ImageSourceConfig& cfg,
                                 const CalibrationResult& calibration,
                                 double early_cutoff = kEarlyReflectionCutoff);

}  // namespace roomverb

#endif  // ROOMVERB_AURALIZE_H_
