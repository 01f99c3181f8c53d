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

#include "roomverb/analysis.h"

#include <algorithm>
#include <cmath>

#include "roomverb/error.h"

namespace roomverb {
namespace {

void CheckObservations(const std::vector<DistanceObservation>& data) {
  for (const auto& row : data) {
    if (!(row.actual > 0.0) || !(row.perceived > 0.0) ||
        !std::isfinite(row.actual) || !std::isfinite(row.perceived)) {
      throw Error(ErrorCode::kNonPositiveValue,
                  "distances must be positive and finite");
    }
  }
  if (data.size() < 3) {
    throw Error(ErrorCode::kDegenerateData, "need at least three observations");
  }
  const bool all_equal =
      std::all_of(data.begin(), data.end(), [&](const DistanceObservation& r) {
        return r.actual == data.front().actual;
      });
  if (all_equal) {
    throw Error(ErrorCode::kDegenerateData,
                "need at least two distinct actual distances");
  }
}

LinearFit LeastSquares(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  // Residuals at rounding level count as a perfect fit.
  const double scale = std::max(1.0, mean_y * mean_y) * n;
  if (syy <= 1e-24 * scale) {
    fit.r_squared = ss_res <= 1e-24 * scale ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace

PowerFit FitPowerLaw(const std::vector<DistanceObservation>& data) {
  CheckObservations(data);
  std::vector<double> log_d;
  std::vector<double> log_p;
  for (const auto& row : data) {
    log_d.push_back(std::log(row.actual));
    log_p.push_back(std::log(row.perceived));
  }
  const LinearFit line = LeastSquares(log_d, log_p);
  return PowerFit{std::exp(line.intercept), line.slope, line.r_squared};
}

LinearFit FitLinear(const std::vector<DistanceObservation>& data) {
  CheckObservations(data);
  std::vector<double> d;
  std::vector<double> p;
  for (const auto& row : data) {
    d.push_back(row.actual);
    p.push_back(row.perceived);
  }
  return LeastSquares(d, p);
}

}  // namespace roomverb
