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

#include "roomverb/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "roomverb/parallel.h"

namespace roomverb {
namespace {

struct Candidate {
  double offset = 0.0;
  double scale = 0.0;
  bool measured = false;
  double rt60 = 0.0;
  double drr = 0.0;
  double score = std::numeric_limits<double>::infinity();
};

// Lexicographic (score, offset, scale).
bool Better(const Candidate& a, const Candidate& b) {
  return std::tie(a.score, a.offset, a.scale) <
         std::tie(b.score, b.offset, b.scale);
}

double MeanSpacing(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  return (values.back() - values.front()) / (values.size() - 1);
}

double MeanLogSpacing(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return std::log(*hi / *lo) / (values.size() - 1);
}

std::vector<double> CenteredLinear(double center, double step, std::size_t n) {
  std::vector<double> out;
  const double mid = (static_cast<double>(n) - 1.0) / 2.0;
  for (std::size_t m = 0; m < n; ++m) {
    out.push_back(std::max(0.0, center + (m - mid) * step));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> CenteredLog(double center, double log_step, std::size_t n) {
  std::vector<double> out;
  const double mid = (static_cast<double>(n) - 1.0) / 2.0;
  for (std::size_t m = 0; m < n; ++m) {
    out.push_back(center * std::exp((m - mid) * log_step));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

CalibrationGrid CalibrationGrid::Default() {
  CalibrationGrid grid;
  for (int ms = 0; ms <= 40; ms += 5) grid.onset_offsets.push_back(ms * 1e-3);
  constexpr int kScaleCount = 21;
  for (int i = 0; i < kScaleCount; ++i) {
    // 10^-2 .. 10^0
    grid.scales.push_back(std::pow(10.0, -2.0 + 2.0 * i / (kScaleCount - 1)));
  }
  return grid;
}

void CalibrationGrid::Validate() const {
  for (std::size_t i = 0; i < onset_offsets.size(); ++i) {
    if (!(onset_offsets[i] >= 0.0) ||
        (i > 0 && onset_offsets[i] < onset_offsets[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "onset offsets must be non-negative and non-decreasing");
    }
  }
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "scales must be positive");
    }
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  }
  if (rt60_tolerance && !(*rt60_tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rt60 tolerance must be positive");
  }
  if (!(rt60_relative_tolerance > 0.0) || !(drr_tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be positive");
  }
  if (!(reverb_start >= 0.0) || !(tail_length_rt60s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "reverb_start must be >= 0 and tail length positive");
  }
}

double CalibrationGrid::Rt60ToleranceFor(double target_rt60) const {
  return rt60_tolerance ? *rt60_tolerance
                        : rt60_relative_tolerance * target_rt60;
}

ImpulseResponse Splice(const ImpulseResponse& early, const ImpulseResponse& tail,
                       double onset_time, double scale) {
  RequireSameRate(early.sample_rate(), tail.sample_rate());
  const std::size_t onset = SecondsToSamples(onset_time, early.sample_rate());
  std::vector<double> out(std::max(early.size(), onset + tail.size()), 0.0);
  const std::size_t kept = std::min(onset, early.size());
  std::copy_n(early.samples().begin(), kept, out.begin());
  for (std::size_t i = 0; i < tail.size(); ++i) {
    out[onset + i] += scale * tail[i];
  }
  return ImpulseResponse(std::move(out), early.sample_rate());
}

CalibrationResult Calibrate(const ImpulseResponse& early,
                            const AcousticMetrics& target,
                            const SchroederParams& tail_template,
                            const CalibrationGrid& grid) {
  grid.Validate();
  if (!(target.rt60 > 0.0) || !std::isfinite(target.drr)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target RT60 must be positive and DRR finite");
  }
  const std::size_t direct = DetectOnset(early);
  const int rate = early.sample_rate();
  const double direct_time = static_cast<double>(direct) / rate;
  const double eps_rt60 = grid.Rt60ToleranceFor(target.rt60);
  const double eps_drr = grid.drr_tolerance;

  if (grid.onset_offsets.empty() || grid.scales.empty()) {
    throw NoMatchError("calibration grid is empty", 0,
                       std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN());
  }

  const ImpulseResponse tail = RenderImpulseResponse(
      tail_template.WithReverbTime(target.rt60),
      grid.tail_length_rt60s * target.rt60, rate);

  auto evaluate = [&](Candidate& c) {
    const ImpulseResponse synthetic = Splice(
        early, tail, direct_time + grid.reverb_start + c.offset, c.scale);
    try {
      c.rt60 = EstimateRt60(synthetic);
      c.drr = ComputeDrr(synthetic);
    } catch (const Error&) {
      return;  // Unmeasurable candidates never match.
    }
    c.measured = true;
    c.score = std::max(std::abs(c.rt60 - target.rt60) / eps_rt60,
                       std::abs(c.drr - target.drr) / eps_drr);
  };
  auto within = [&](const Candidate& c) {
    return c.measured && std::abs(c.rt60 - target.rt60) <= eps_rt60 &&
           std::abs(c.drr - target.drr) <= eps_drr;
  };

  std::vector<double> offsets = grid.onset_offsets;
  std::vector<double> scales = grid.scales;
  const std::size_t offset_count = offsets.size();
  const std::size_t scale_count = scales.size();
  double offset_step = MeanSpacing(offsets);
  double log_scale_step = MeanLogSpacing(scales);

  std::optional<Candidate> best_any;
  std::optional<Candidate> best_match;
  std::size_t evaluated = 0;

  for (int sweep = 0; sweep < grid.max_iterations; ++sweep) {
    std::vector<Candidate> candidates;
    candidates.reserve(offsets.size() * scales.size());
    for (double o : offsets) {
      for (double s : scales) candidates.push_back({o, s});
    }
    ParallelFor(candidates.size(),
                [&](std::size_t i) { evaluate(candidates[i]); });
    evaluated += candidates.size();

    for (const Candidate& c : candidates) {
      if (c.measured && (!best_any || Better(c, *best_any))) best_any = c;
      if (within(c) && (!best_match || Better(c, *best_match))) best_match = c;
    }
    if (!best_any) continue;

    offset_step /= 2.0;
    log_scale_step /= 2.0;
    offsets = CenteredLinear(best_any->offset, offset_step, offset_count);
    scales = CenteredLog(best_any->scale, log_scale_step, scale_count);
  }

  if (!best_match) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double rt60_err = best_any ? best_any->rt60 - target.rt60 : nan;
    const double drr_err = best_any ? best_any->drr - target.drr : nan;
    throw NoMatchError(
        "no candidate within tolerance after " + std::to_string(evaluated) +
            " evaluations (best dRT60 " + std::to_string(rt60_err) +
            " s, dDRR " + std::to_string(drr_err) + " dB)",
        evaluated, rt60_err, drr_err);
  }

  const Candidate& c = *best_match;
  const double onset_time = direct_time + grid.reverb_start + c.offset;
  return CalibrationResult{
      .matched_ir = Splice(early, tail, onset_time, c.scale),
      .tail = tail,
      .chosen_onset = onset_time,
      .chosen_onset_offset = c.offset,
      .reverb_start = grid.reverb_start,
      .chosen_scale = c.scale,
      .achieved_rt60 = c.rt60,
      .achieved_drr = c.drr,
      .rt60_error = c.rt60 - target.rt60,
      .drr_error = c.drr - target.drr,
      .rt60_tolerance = eps_rt60,
      .drr_tolerance = eps_drr,
      .candidates_evaluated = evaluated,
  };
}

ImpulseResponse ApplyCalibration(const ImpulseResponse& early,
                                 const CalibrationResult& result) {
  const double direct_time =
      static_cast<double>(DetectOnset(early)) / early.sample_rate();
  return Splice(early, result.tail,
                direct_time + result.reverb_start + result.chosen_onset_offset,
                result.chosen_scale);
}

ShoeboxCalibration CalibrateShoebox(const RoomSpec& room, const Position& source,
                                    const Position& listener,
                                    const ImageSourceConfig& image_cfg,
                                    const SchroederParams& tail_template,
                                    const CalibrationGrid& grid,
                                    double early_cutoff) {
  ImpulseResponse full =
      GenerateImpulseResponse(room, source, listener, image_cfg);
  ImpulseResponse early = EarlyPart(full, early_cutoff);
  const AcousticMetrics target = MeasureMetrics(full);
  CalibrationResult result = Calibrate(early, target, tail_template, grid);
  return ShoeboxCalibration{std::move(full), std::move(early), target,
                            std::move(result)};
}

}  // namespace roomverb
