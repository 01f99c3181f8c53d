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

#ifndef ROOMVERB_SCHROEDER_H_
#define ROOMVERB_SCHROEDER_H_

#include <cstddef>
#include <vector>

#include "roomverb/core.h"

namespace roomverb {

// Reverberation time the default parameter set is tuned for.
inline constexpr double kDefaultReverbTime = 1.5;  // s

// Parameters of a Schroeder reverberator: a parallel bank of feedback combs
// followed by a chain of all-pass sections. Delays are in seconds and are
// rounded to whole samples at render time.
//
// dry_gain is carried for completeness only. Rendered responses never
// contain the direct path; calibration takes it from the early response.
struct SchroederParams {
  std::vector<double> comb_delays{0.0297, 0.0371, 0.0411, 0.0437};
  std::vector<double> comb_feedbacks;  // One per comb, each in (0, 1).
  std::vector<double> allpass_delays{0.0050, 0.0017};
  double allpass_gain = 0.7;
  double pre_delay = 0.0;  // s
  double damping = 0.0;    // One-pole low-pass coefficient in [0, 1].
  double wet_gain = 1.0;
  double dry_gain = 0.0;

  // Classic four-comb, two-all-pass design with feedbacks set for
  // kDefaultReverbTime.
  static SchroederParams Default();

  // Copy with every comb feedback set from FeedbackForRt60(delay, rt60).
  // This is the "room size" control.
  SchroederParams WithReverbTime(double rt60) const;

  // Throws kUnstableFilter for any feedback or all-pass gain with magnitude
  // >= 1, kInvalidArgument for any other violated invariant (including comb
  // delays that collide after rounding to |sample_rate|).
  void Validate(int sample_rate) const;
};

// Comb feedback g = 10^(-3 delay / rt60): the recirculating signal loses
// 60 dB every rt60 seconds.
double FeedbackForRt60(double delay, double rt60);

// Feedback comb with a one-pole low-pass in the loop:
//   y[n] = g * (x[n - D] + f[n - D]),  f[n] = (1 - d) y[n] + d f[n - 1].
// A unit impulse yields g, g^2, g^3, ... at D, 2D, 3D, ... when d = 0.
class CombFilter {
 public:
  CombFilter(std::size_t delay, double feedback, double damping);

  double Process(double input);

 private:
  std::vector<double> buffer_;
  std::size_t index_ = 0;
  double feedback_;
  double damping_;
  double filter_state_ = 0.0;
};

// Schroeder all-pass: y[n] = -g x[n] + x[n - D] + g y[n - D].
class AllpassFilter {
 public:
  AllpassFilter(std::size_t delay, double gain);

  double Process(double input);

 private:
  std::vector<double> input_history_;
  std::vector<double> output_history_;
  std::size_t index_ = 0;
  double gain_;
};

// Streaming reverberator: pre-delay, summed comb bank, all-pass chain, wet
// gain. Owns its state; one instance per render.
class SchroederReverb {
 public:
  SchroederReverb(const SchroederParams& params, int sample_rate);

  double Process(double input);

 private:
  std::vector<double> pre_delay_line_;
  std::size_t pre_delay_index_ = 0;
  std::vector<CombFilter> combs_;
  std::vector<AllpassFilter> allpasses_;
  double wet_gain_;
};

// Response of the reverberator to a unit impulse, |duration| seconds long.
ImpulseResponse RenderImpulseResponse(const SchroederParams& params,
                                      double duration, int sample_rate);

}  // namespace roomverb

#endif  // ROOMVERB_SCHROEDER_H_
