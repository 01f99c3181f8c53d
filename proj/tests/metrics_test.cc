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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "roomverb/shoebox.h"
#include "test_util.h"

namespace roomverb {
namespace {

using testing_util::CaseGenerator;
using testing_util::ExponentialEnvelope;

constexpr int kRate = 48000;

TEST(EnergyDecayCurveTest, UnitImpulseClampsToFloor) {
  std::vector<double> v(10, 0.0);
  v[0] = 1.0;
  const std::vector<double> edc = EnergyDecayCurve(ImpulseResponse(v, kRate));
  ASSERT_EQ(edc.size(), 10u);
  EXPECT_DOUBLE_EQ(edc[0], 0.0);
  for (std::size_t i = 1; i < edc.size(); ++i) EXPECT_DOUBLE_EQ(edc[i], kEdcFloorDb);
}

TEST(EnergyDecayCurveTest, ConstantEnergyClosedForm) {
  const std::size_t n = 1000;
  const std::vector<double> edc =
      EnergyDecayCurve(ImpulseResponse(std::vector<double>(n, -0.3), kRate));
  for (std::size_t j = 0; j < n; ++j) {
    const double expected = 10.0 * std::log10(static_cast<double>(n - j) / n);
    EXPECT_NEAR(edc[j], std::max(expected, kEdcFloorDb), 1e-9) << j;
  }
}

TEST(EnergyDecayCurveTest, ExponentialIsStraightLine) {
  // Backward sum of r^(2j) is geometric; away from the truncation point the
  // curve falls at exactly 60/T dB per second.
  const double t60 = 1.0;
  const auto v = ExponentialEnvelope(t60, 2.0, kRate);
  const std::vector<double> edc = EnergyDecayCurve(ImpulseResponse(v, kRate));
  for (double t : {0.1, 0.25, 0.5}) {
    const std::size_t i = static_cast<std::size_t>(t * kRate);
    const double slope = (edc[i + 4800] - edc[i]) / 0.1;
    EXPECT_NEAR(slope, -60.0 / t60, 0.02 * 60.0 / t60) << t;
  }
}

TEST(EnergyDecayCurveTest, SilentInput) {
  EXPECT_ROOMVERB_ERROR(EnergyDecayCurve(ImpulseResponse({0.0, 0.0}, kRate)),
                        ErrorCode::kSilentInput);
}

TEST(EnergyDecayCurveTest, NonIncreasingFromZeroProperty) {
  CaseGenerator gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = gen.Signal(gen.UniformInt(1, 2000));
    if (trial % 3 == 0) {
      for (std::size_t i = 0; i < v.size(); i += 2) v[i] = 0.0;
    }
    v[gen.UniformInt(0, static_cast<int>(v.size()) - 1)] = 0.5;
    const auto edc = EnergyDecayCurve(ImpulseResponse(v, kRate));
    EXPECT_DOUBLE_EQ(edc[0], 0.0);
    for (std::size_t i = 1; i < edc.size(); ++i) {
      EXPECT_LE(edc[i], edc[i - 1]);
      EXPECT_GE(edc[i], kEdcFloorDb);
    }
  }
}

TEST(EstimateRt60Test, DeterministicExponential) {
  for (double t60 : {0.5, 1.0, 2.0}) {
    const ImpulseResponse ir(ExponentialEnvelope(t60, 2.0 * t60 + 0.5, kRate),
                             kRate);
    EXPECT_NEAR(EstimateRt60(ir), t60, 0.02 * t60) << t60;
  }
}

TEST(EstimateRt60Test, NoiseExcitedExponential) {
  CaseGenerator gen(2026);
  auto v = ExponentialEnvelope(2.0, 5.0, kRate);
  for (double& x : v) x *= gen.Gaussian();
  EXPECT_NEAR(EstimateRt60(ImpulseResponse(v, kRate)), 2.0, 0.1);
}

TEST(EstimateRt60Test, LoneImpulseHasInsufficientDecay) {
  std::vector<double> v(4800, 0.0);
  v[10] = 1.0;
  EXPECT_ROOMVERB_ERROR(EstimateRt60(ImpulseResponse(v, kRate)),
                        ErrorCode::kInsufficientDecay);
}

TEST(EstimateRt60Test, ShortDecayHasInsufficientDecay) {
  // Three equal samples: the curve ends at -4.77 dB.
  EXPECT_ROOMVERB_ERROR(EstimateRt60(ImpulseResponse({0.5, 0.5, 0.5}, kRate)),
                        ErrorCode::kInsufficientDecay);
}

TEST(EstimateRt60Test, WindowOptions) {
  const ImpulseResponse ir(ExponentialEnvelope(1.0, 3.0, kRate), kRate);
  // Literal 0 to -60 dB window.
  EXPECT_NEAR(EstimateRt60(ir, {0.0, -60.0, true}), 1.0, 0.02);
  // Without extrapolation the window's own 30 dB span is reported.
  EXPECT_NEAR(EstimateRt60(ir, {-5.0, -35.0, false}), 0.5, 0.01);
  EXPECT_NEAR(EstimateRt60(ir, {0.0, -60.0, false}), 1.0, 0.02);
  EXPECT_ROOMVERB_ERROR(EstimateRt60(ir, {-35.0, -5.0, true}),
                        ErrorCode::kInvalidArgument);
  EXPECT_ROOMVERB_ERROR(EstimateRt60(ir, {1.0, -5.0, true}),
                        ErrorCode::kInvalidArgument);
}

TEST(EstimateRt60Test, ScaleInvariantProperty) {
  CaseGenerator gen(17);
  auto base = ExponentialEnvelope(0.8, 2.0, kRate);
  for (double& x : base) x *= gen.Gaussian();
  const double reference = EstimateRt60(ImpulseResponse(base, kRate));
  for (int trial = 0; trial < 10; ++trial) {
    double c = gen.Uniform(0.001, 1000.0);
    if (trial % 2) c = -c;
    auto v = base;
    for (double& x : v) x *= c;
    EXPECT_NEAR(EstimateRt60(ImpulseResponse(v, kRate)), reference,
                1e-9 * reference);
  }
}

TEST(DetectOnsetTest, Examples) {
  std::vector<double> v(1000, 0.0);
  v[480] = 1.0;
  EXPECT_EQ(DetectOnset(ImpulseResponse(v, kRate)), 480u);

  std::vector<double> w(200, 0.0);
  w[100] = 1.0;
  w[50] = 0.4;
  EXPECT_EQ(DetectOnset(ImpulseResponse(w, kRate)), 100u);
  w[50] = 0.6;
  EXPECT_EQ(DetectOnset(ImpulseResponse(w, kRate)), 50u);
  w[50] = -0.6;
  EXPECT_EQ(DetectOnset(ImpulseResponse(w, kRate)), 50u);

  EXPECT_ROOMVERB_ERROR(DetectOnset(ImpulseResponse({0.0}, kRate)),
                        ErrorCode::kSilentInput);
}

TEST(DetectOnsetTest, ShiftEquivarianceProperty) {
  CaseGenerator gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = gen.Signal(gen.UniformInt(1, 500));
    const std::size_t shift = gen.UniformInt(0, 300);
    std::vector<double> shifted(shift, 0.0);
    shifted.insert(shifted.end(), v.begin(), v.end());
    EXPECT_EQ(DetectOnset(ImpulseResponse(shifted, kRate)),
              DetectOnset(ImpulseResponse(v, kRate)) + shift);
  }
}

// Direct energy 1 at |onset|, tail energy 1/ratio spread evenly after the
// direct window.
std::vector<double> RatioIr(double ratio, std::size_t onset) {
  const std::size_t c = 120;
  const std::size_t tail = 9000;
  std::vector<double> v(onset + c + 1 + tail, 0.0);
  v[onset] = 1.0;
  const double amp = std::sqrt(1.0 / ratio / tail);
  for (std::size_t i = onset + c + 1; i < v.size(); ++i) v[i] = amp;
  return v;
}

TEST(ComputeDrrTest, KnownRatios) {
  EXPECT_NEAR(ComputeDrr(ImpulseResponse(RatioIr(1.0, 2000), kRate)), 0.0, 1e-9);
  EXPECT_NEAR(ComputeDrr(ImpulseResponse(RatioIr(10.0, 2000), kRate)), 10.0, 1e-9);
  EXPECT_NEAR(ComputeDrr(ImpulseResponse(RatioIr(100.0, 2000), kRate)), 20.0,
              1e-9);
}

TEST(ComputeDrrTest, WindowIsTwoPointFiveMilliseconds) {
  // One unit of energy at onset + C counts as direct; at onset + C + 1 it
  // counts as reverberant.
  const std::size_t onset = 2000;
  const std::size_t c = SecondsToSamples(kDirectWindowSeconds, kRate);
  ASSERT_EQ(c, 120u);
  auto base = RatioIr(1.0, onset);
  auto inside = base;
  inside[onset + c] = 0.3;
  auto outside = base;
  outside[onset + c + 1] += 0.3;
  const double e_tail = 1.0;
  const double a = ComputeDrr(ImpulseResponse(inside, kRate));
  const double b = ComputeDrr(ImpulseResponse(outside, kRate));
  EXPECT_NEAR(a, 10.0 * std::log10((1.0 + 0.09) / e_tail), 1e-9);
  const double amp = base[onset + c + 1];
  const double moved_tail = e_tail - amp * amp + (amp + 0.3) * (amp + 0.3);
  EXPECT_NEAR(b, 10.0 * std::log10(1.0 / moved_tail), 1e-9);
  EXPECT_GT(a, b);

  // The lower window edge is symmetric.
  auto before = base;
  before[onset - c] = 0.3;
  EXPECT_NEAR(ComputeDrr(ImpulseResponse(before, kRate)), a, 1e-12);
  auto ignored = base;
  ignored[onset - c - 1] = 0.3;
  EXPECT_NEAR(ComputeDrr(ImpulseResponse(ignored, kRate)), 0.0, 1e-12);
}

TEST(ComputeDrrTest, DirectWindowClampsAtStart) {
  auto v = RatioIr(10.0, 5);
  EXPECT_NEAR(ComputeDrr(ImpulseResponse(v, kRate)), 10.0, 1e-9);
}

TEST(ComputeDrrTest, LoneImpulseHasSilentTail) {
  std::vector<double> v(1000, 0.0);
  v[100] = 1.0;
  EXPECT_ROOMVERB_ERROR(ComputeDrr(ImpulseResponse(v, kRate)),
                        ErrorCode::kSilentTail);
}

TEST(ComputeDrrTest, ScaleInvariantProperty) {
  CaseGenerator gen(29);
  for (int trial = 0; trial < 50; ++trial) {
    auto v = gen.Signal(gen.UniformInt(400, 3000), 0.2);
    v[gen.UniformInt(0, 200)] = 1.0;
    const double c = gen.Uniform(1e-3, 1e3) * (trial % 2 ? -1.0 : 1.0);
    auto w = v;
    for (double& x : w) x *= c;
    EXPECT_NEAR(ComputeDrr(ImpulseResponse(w, kRate)),
                ComputeDrr(ImpulseResponse(v, kRate)), 1e-9);
  }
}

TEST(MeasureMetricsTest, CombinesEstimators) {
  CaseGenerator gen(31);
  auto v = ExponentialEnvelope(0.6, 1.5, kRate);
  for (double& x : v) x *= 0.1 * gen.Gaussian();
  std::vector<double> ir(960, 0.0);
  ir.push_back(1.0);
  ir.insert(ir.end(), v.begin(), v.end());
  const ImpulseResponse x(ir, kRate);
  const AcousticMetrics m = MeasureMetrics(x);
  EXPECT_DOUBLE_EQ(m.onset_time, 0.02);
  EXPECT_DOUBLE_EQ(m.drr, ComputeDrr(x));
  EXPECT_DOUBLE_EQ(m.rt60, EstimateRt60(x));
}

TEST(SabineRt60Test, PresetRooms) {
  // 0.1611 * 270.75 / (294.5 * 0.1) and 0.1611 * 507 / (494 * 0.1).
  EXPECT_NEAR(SabineRt60({{9.5, 9.5, 3.0}, 0.1}), 1.481, 1e-3);
  EXPECT_NEAR(SabineRt60({{13.0, 13.0, 3.0}, 0.1}), 1.653, 1e-3);
  EXPECT_NEAR(SabineRt60({{9.5, 9.5, 3.0}, 0.1}), 0.1611 * 270.75 / 29.45, 1e-12);
}

TEST(SabineRt60Test, UnitAbsorption) {
  const RoomSpec room{{4.0, 5.0, 6.0}, 1.0};
  EXPECT_DOUBLE_EQ(SabineRt60(room), 0.1611 * 120.0 / 148.0);
}

TEST(SabineRt60Test, AgreesWithImageSourceInDiffuseCube) {
  const RoomSpec room{{4.0, 4.0, 4.0}, 0.3};
  ImageSourceConfig cfg;
  cfg.duration = 1.0;
  cfg.max_order = CompleteOrder(room, cfg.duration);
  const double measured =
      EstimateRt60(GenerateImpulseResponse(room, {1.1, 1.7, 2.3}, {2.9, 2.6, 1.4}, cfg));
  EXPECT_NEAR(measured / SabineRt60(room), 1.0, 0.25);
}

TEST(SabineRt60Test, FlatPresetRoomsDecaySlowerThanSabine) {
  // Specular energy trapped between the large parallel floor and ceiling
  // lengthens the decay beyond the diffuse-field estimate.
  for (const RoomSpec& room :
       {RoomSpec{{9.5, 9.5, 3.0}, 0.1}, RoomSpec{{13.0, 13.0, 3.0}, 0.1}}) {
    const Position listener{room.dimensions[0] / 2, 1.0, 1.7};
    const Position source{listener.x + 1.0, listener.y + 2.0, 1.7};
    const double measured = EstimateRt60(GenerateImpulseResponse(room, source, listener));
    EXPECT_GT(measured, SabineRt60(room));
  }
}

}  // namespace
}  // namespace roomverb
