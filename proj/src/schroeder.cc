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

#include "roomverb/schroeder.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomverb/error.h"

namespace roomverb {
namespace {

std::size_t DelaySamples(double seconds, int sample_rate) {
  return static_cast<std::size_t>(std::llround(seconds * sample_rate));
}

}  // namespace

SchroederParams SchroederParams::Default() {
  return SchroederParams{}.WithReverbTime(kDefaultReverbTime);
}

SchroederParams SchroederParams::WithReverbTime(double rt60) const {
  SchroederParams out = *this;
  out.comb_feedbacks.clear();
  for (double d : comb_delays) out.comb_feedbacks.push_back(FeedbackForRt60(d, rt60));
  return out;
}

void SchroederParams::Validate(int sample_rate) const {
  if (sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
  if (comb_delays.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one comb is required");
  }
  if (comb_feedbacks.size() != comb_delays.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "comb_feedbacks must match comb_delays in length");
  }
  for (double g : comb_feedbacks) {
    if (!std::isfinite(g) || std::abs(g) >= 1.0) {
      throw Error(ErrorCode::kUnstableFilter,
                  "comb feedback " + std::to_string(g) + " is not below 1");
    }
  }
  if (!std::isfinite(allpass_gain) || std::abs(allpass_gain) >= 1.0) {
    throw Error(ErrorCode::kUnstableFilter, "all-pass gain is not below 1");
  }
  std::vector<std::size_t> rounded;
  for (double d : comb_delays) {
    if (!(d > 0.0) || DelaySamples(d, sample_rate) == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "comb delays must be at least one sample");
    }
    rounded.push_back(DelaySamples(d, sample_rate));
  }
  std::sort(rounded.begin(), rounded.end());
  if (std::adjacent_find(rounded.begin(), rounded.end()) != rounded.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "comb delays collide after rounding to samples");
  }
  for (double d : allpass_delays) {
    if (!(d > 0.0) || DelaySamples(d, sample_rate) == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "all-pass delays must be at least one sample");
    }
  }
  if (!(pre_delay >= 0.0) || !(damping >= 0.0 && damping <= 1.0) ||
      !(wet_gain >= 0.0) || !(dry_gain >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "pre_delay, wet_gain and dry_gain must be >= 0 and damping "
                "in [0, 1]");
  }
}

double FeedbackForRt60(double delay, double rt60) {
  if (!(delay > 0.0) || !(rt60 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "delay and rt60 must both be positive");
  }
  return std::pow(10.0, -3.0 * delay / rt60);
}

CombFilter::CombFilter(std::size_t delay, double feedback, double damping)
    : buffer_(std::max<std::size_t>(delay, 1), 0.0),
      feedback_(feedback),
      damping_(damping) {}

double CombFilter::Process(double input) {
  const double output = feedback_ * buffer_[index_];
  filter_state_ = (1.0 - damping_) * output + damping_ * filter_state_;
  buffer_[index_] = input + filter_state_;
  if (++index_ == buffer_.size()) index_ = 0;
  return output;
}

AllpassFilter::AllpassFilter(std::size_t delay, double gain)
    : input_history_(std::max<std::size_t>(delay, 1), 0.0),
      output_history_(std::max<std::size_t>(delay, 1), 0.0),
      gain_(gain) {}

double AllpassFilter::Process(double input) {
  const double output =
      -gain_ * input + input_history_[index_] + gain_ * output_history_[index_];
  input_history_[index_] = input;
  output_history_[index_] = output;
  if (++index_ == input_history_.size()) index_ = 0;
  return output;
}

SchroederReverb::SchroederReverb(const SchroederParams& params,
                                 int sample_rate)
    : wet_gain_(params.wet_gain) {
  params.Validate(sample_rate);
  const std::size_t pre = DelaySamples(params.pre_delay, sample_rate);
  if (pre > 0) pre_delay_line_.assign(pre, 0.0);
  for (std::size_t i = 0; i < params.comb_delays.size(); ++i) {
    combs_.emplace_back(DelaySamples(params.comb_delays[i], sample_rate),
                        params.comb_feedbacks[i], params.damping);
  }
  for (double d : params.allpass_delays) {
    allpasses_.emplace_back(DelaySamples(d, sample_rate), params.allpass_gain);
  }
}

double SchroederReverb::Process(double input) {
  double x = input;
  if (!pre_delay_line_.empty()) {
    std::swap(x, pre_delay_line_[pre_delay_index_]);
    if (++pre_delay_index_ == pre_delay_line_.size()) pre_delay_index_ = 0;
  }
  double sum = 0.0;
  for (CombFilter& comb : combs_) sum += comb.Process(x);
  for (AllpassFilter& ap : allpasses_) sum = ap.Process(sum);
  return wet_gain_ * sum;
}

ImpulseResponse RenderImpulseResponse(const SchroederParams& params,
                                      double duration, int sample_rate) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  }
  SchroederReverb reverb(params, sample_rate);
  const std::size_t length =
      std::max<std::size_t>(1, DelaySamples(duration, sample_rate));
  std::vector<double> samples(length);
  for (std::size_t n = 0; n < length; ++n) {
    samples[n] = reverb.Process(n == 0 ? 1.0 : 0.0);
  }
  return ImpulseResponse(std::move(samples), sample_rate);
}

}  // namespace roomverb
