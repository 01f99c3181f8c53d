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

#ifndef ROOMVERB_CALIBRATION_H_
#define ROOMVERB_CALIBRATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "roomverb/core.h"
#include "roomverb/error.h"
#include "roomverb/metrics.h"
#include "roomverb/schroeder.h"
#include "roomverb/shoebox.h"

namespace roomverb {

// Search space and acceptance thresholds for matching a synthetic tail to a
// reference response.
struct CalibrationGrid {
  // Added to direct onset + reverb_start to get the splice time (s).
  std::vector<double> onset_offsets;
  std::vector<double> scales;
  int max_iterations = 3;
  // Absolute RT60 tolerance (s). When unset, rt60_relative_tolerance of the
  // target RT60 is used.
  std::optional<double> rt60_tolerance;
  double rt60_relative_tolerance = 0.05;
  double drr_tolerance = 1.0;  // dB
  double reverb_start = kEarlyReflectionCutoff;
  // Length of the rendered tail in multiples of the target RT60.
  double tail_length_rt60s = 2.0;

  // Offsets 0..40 ms in 5 ms steps, 21 log-spaced scales over [0.01, 1],
  // three sweeps, 5 % / 1 dB tolerances.
  static CalibrationGrid Default();

  void Validate() const;
  double Rt60ToleranceFor(double target_rt60) const;
};

struct CalibrationResult {
  ImpulseResponse matched_ir;
  ImpulseResponse tail;          // Rendered reverberator tail (unscaled).
  double chosen_onset = 0.0;     // Absolute splice time (s).
  double chosen_onset_offset = 0.0;
  double reverb_start = kEarlyReflectionCutoff;
  double chosen_scale = 0.0;
  double achieved_rt60 = 0.0;
  double achieved_drr = 0.0;
  double rt60_error = 0.0;       // achieved - target (s)
  double drr_error = 0.0;        // achieved - target (dB)
  double rt60_tolerance = 0.0;
  double drr_tolerance = 0.0;
  std::size_t candidates_evaluated = 0;
};

// Thrown when no candidate lands inside both tolerances. Carries the best
// candidate seen (errors are NaN when nothing could be measured).
class NoMatchError : public Error {
 public:
  NoMatchError(const std::string& message, std::size_t candidates,
               double best_rt60_error, double best_drr_error)
      : Error(ErrorCode::kNoMatch, message),
        candidates_evaluated(candidates),
        best_rt60_error(best_rt60_error),
        best_drr_error(best_drr_error) {}

  std::size_t candidates_evaluated;
  double best_rt60_error;
  double best_drr_error;
};

// Truncates |early| at |onset_time| (samples at or after it are zeroed) and
// adds scale * tail starting there. Output length is
// max(onset sample + len(tail), len(early)).
ImpulseResponse Splice(const ImpulseResponse& early, const ImpulseResponse& tail,
                       double onset_time, double scale);

// Grid search over (onset offset, scale). The reverberator tail is rendered
// once with its comb feedbacks set for target.rt60 and reused for every
// candidate. Each candidate is spliced onto |early| at
// direct onset + grid.reverb_start + offset and measured. The result is the
// in-tolerance candidate with the smallest
// max(|dRT60| / eps_rt60, |dDRR| / eps_drr); ties go to the smaller offset,
// then the smaller scale. After each sweep the grid is re-centered on the
// best candidate so far with half the spacing.
//
// Candidate evaluation runs on ParallelFor; the result does not depend on
// the worker count.
CalibrationResult Calibrate(const ImpulseResponse& early,
                            const AcousticMetrics& target,
                            const SchroederParams& tail_template,
                            const CalibrationGrid& grid);

// Applies a previous calibration to another early response: splices
// |result.tail| scaled by chosen_scale at that response's own direct onset
// + reverb_start + chosen_onset_offset.
ImpulseResponse ApplyCalibration(const ImpulseResponse& early,
                                 const CalibrationResult& result);

// Reference response, its early part, the measured target and the
// calibration for one source/listener pair in a shoebox room.
struct ShoeboxCalibration {
  ImpulseResponse full;
  ImpulseResponse early;
  AcousticMetrics target;
  CalibrationResult result;
};

ShoeboxCalibration CalibrateShoebox(const RoomSpec& room, const Position& source,
                                    const Position& listener,
                                    const ImageSourceConfig& image_cfg,
                                    const SchroederParams& tail_template,
                                    const CalibrationGrid& grid,
                                    double early_cutoff = kEarlyReflectionCutoff);

}  // namespace roomverb

#endif  // ROOMVERB_CALIBRATION_H_
