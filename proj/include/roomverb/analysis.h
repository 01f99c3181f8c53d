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

#ifndef ROOMVERB_ANALYSIS_H_
#define ROOMVERB_ANALYSIS_H_

#include <vector>

namespace roomverb {

struct DistanceObservation {
  double actual = 0.0;     // m
  double perceived = 0.0;  // m
};

// Perceived distance D = k * d^a fitted by ordinary least squares of log D
// on log d. r_squared is computed in log-log space.
struct PowerFit {
  double k = 0.0;
  double a = 0.0;
  double r_squared = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Both fits require at least three rows with at least two distinct actual
// distances (kDegenerateData otherwise) and strictly positive values
// (kNonPositiveValue). R^2 is clamped to [0, 1]; data with no variance in
// the response and a perfect fit reports 1.
PowerFit FitPowerLaw(const std::vector<DistanceObservation>& data);
LinearFit FitLinear(const std::vector<DistanceObservation>& data);

}  // namespace roomverb

#endif  // ROOMVERB_ANALYSIS_H_
