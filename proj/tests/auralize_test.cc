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

#include "roomverb/auralize.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "roomverb/convolution.h"
#include "roomverb/shoebox.h"
#include "test_util.h"

namespace roomverb {
namespace {

using testing_util::CaseGenerator;
using testing_util::DirectConvolution;

constexpr int kRate = 48000;

double MaxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double RelativeError(const std::vector<double>& got,
                     const std::vector<double>& want) {
  EXPECT_EQ(got.size(), want.size());
  double err = 0.0;
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
    err = std::max(err, std::abs(got[i] - want[i]));
  }
  return err / std::max(MaxAbs(want), 1e-300);
}

WalkthroughSpec EightMeterWalk() {
  WalkthroughSpec spec;
  spec.path_start = {2.5, 1.0, 1.7};
  spec.path_end = {2.5, 9.0, 1.7};
  spec.source = {12.5, 5.0, 1.7};
  return spec;
}

const RoomSpec kCorridor{{45.0, 10.0, 3.0}, 0.1};

TEST(ConvolveTest, SmallHandExamples) {
  const MonoSignal ones(std::vector<double>(3, 1.0), kRate);
  EXPECT_EQ(Convolve(ones, ImpulseResponse(std::vector<double>(3, 1.0), kRate)).vector(),
            (std::vector<double>{1, 2, 3, 2, 1}));

  CaseGenerator gen(61);
  const std::vector<double> dry = gen.Signal(500);
  const MonoSignal identity = Convolve(MonoSignal(dry, kRate), ImpulseResponse({1.0}, kRate));
  EXPECT_EQ(identity.vector(), dry);

  std::vector<double> delayed(100, 0.0);
  delayed[37] = -0.75;
  const MonoSignal shifted =
      Convolve(MonoSignal(dry, kRate), ImpulseResponse(delayed, kRate));
  ASSERT_EQ(shifted.size(), 599u);
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    const double want = (i >= 37 && i - 37 < dry.size()) ? -0.75 * dry[i - 37] : 0.0;
    EXPECT_NEAR(shifted[i], want, 1e-12);
  }
}

TEST(ConvolveTest, RateMismatch) {
  EXPECT_ROOMVERB_ERROR(Convolve(MonoSignal({1.0}, kRate), ImpulseResponse({1.0}, 44100)),
                        ErrorCode::kRateMismatch);
}

TEST(ConvolveTest, MatchesDirectSumOracle) {
  CaseGenerator gen(67);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = gen.Signal(gen.UniformInt(1, 4096));
    const auto b = gen.Signal(gen.UniformInt(1, 4096));
    EXPECT_LE(RelativeError(LinearConvolve(a, b), DirectConvolution(a, b)), 1e-6)
        << a.size() << "x" << b.size();
  }
}

TEST(ConvolveTest, CommutativeAndLinear) {
  CaseGenerator gen(71);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = gen.Signal(gen.UniformInt(1, 700));
    const auto b = gen.Signal(gen.UniformInt(1, 700));
    const auto c = gen.Signal(b.size());
    EXPECT_LE(RelativeError(LinearConvolve(a, b), LinearConvolve(b, a)), 1e-12);
    const double alpha = gen.Uniform(-3, 3);
    std::vector<double> mixed(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) mixed[i] = alpha * b[i] + c[i];
    const auto ab = LinearConvolve(a, b);
    const auto ac = LinearConvolve(a, c);
    std::vector<double> want(ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) want[i] = alpha * ab[i] + ac[i];
    EXPECT_LE(RelativeError(LinearConvolve(a, mixed), want), 1e-10);
  }
}

TEST(ApplyLevelTest, ReferenceGains) {
  const MonoSignal s({0.5, -0.25}, kRate);
  EXPECT_EQ(ApplyLevel(s, 94.0), s);
  EXPECT_NEAR(ApplyLevel(s, 88.0)[0], 0.5 * 0.5012, 1e-4);
  EXPECT_DOUBLE_EQ(ApplyLevel(s, 88.0)[0], 0.5 * std::pow(10.0, -0.3));
  EXPECT_NEAR(ApplyLevel(s, 78.0)[1], -0.25 * 0.1585, 1e-4);
  EXPECT_DOUBLE_EQ(ApplyLevel(s, 78.0)[1], -0.25 * std::pow(10.0, -0.8));
}

TEST(ApplyLevelTest, WarnsAboveFullScaleWithoutClipping) {
  std::ostringstream captured;
  std::streambuf* old = std::clog.rdbuf(captured.rdbuf());
  const MonoSignal loud = ApplyLevel(MonoSignal({0.9}, kRate), 100.0);
  std::clog.rdbuf(old);
  EXPECT_GT(loud[0], 1.0);
  EXPECT_NE(captured.str().find("warning"), std::string::npos);
}

TEST(WalkthroughSpecTest, EightMetersGivesEightyOnePositions) {
  const WalkthroughSpec spec = EightMeterWalk();
  EXPECT_DOUBLE_EQ(spec.PathLength(), 8.0);
  EXPECT_EQ(spec.Intervals(), 80u);
  const auto positions = spec.ListenerPositions();
  ASSERT_EQ(positions.size(), 81u);
  EXPECT_EQ(positions.front(), spec.path_start);
  EXPECT_EQ(positions.back(), spec.path_end);
  EXPECT_NEAR(positions[40].y, 5.0, 1e-12);
  EXPECT_NEAR(spec.Duration(), 5.755, 1e-3);
}

TEST(WalkthroughSpecTest, ValidationErrors) {
  WalkthroughSpec spec = EightMeterWalk();
  spec.spacing = 0.3;
  EXPECT_ROOMVERB_ERROR(spec.Validate(), ErrorCode::kInvalidArgument);
  spec = EightMeterWalk();
  spec.speed = 0.0;
  EXPECT_ROOMVERB_ERROR(spec.Validate(), ErrorCode::kInvalidArgument);
  spec = EightMeterWalk();
  spec.crossfade = 0.1;  // Longer than 0.1 m at 1.39 m/s.
  EXPECT_ROOMVERB_ERROR(spec.Validate(), ErrorCode::kInvalidArgument);
  spec = EightMeterWalk();
  spec.path_end = spec.path_start;
  EXPECT_ROOMVERB_ERROR(spec.Validate(), ErrorCode::kInvalidArgument);
}

TEST(CrossfadeTest, EqualPowerIdentity) {
  for (int i = 0; i <= 10000; ++i) {
    const double t = i / 10000.0;
    const auto [g1, g2] = EqualPowerGains(t);
    EXPECT_NEAR(g1 * g1 + g2 * g2, 1.0, 1e-9);
    EXPECT_GE(g1, 0.0);
    EXPECT_GE(g2, 0.0);
  }
  EXPECT_DOUBLE_EQ(EqualPowerGains(0.0).first, 1.0);
  EXPECT_NEAR(EqualPowerGains(1.0).first, 0.0, 1e-15);
}

TEST(CrossfadeTest, CorrelationCompensation) {
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    // Uncorrelated material keeps the equal-power law.
    EXPECT_EQ(CrossfadeGains(t, 0.0), EqualPowerGains(t));
    // Fully correlated material sums to unity gain.
    const auto [a, b] = CrossfadeGains(t, 1.0);
    EXPECT_NEAR(a + b, 1.0, 1e-12);
    // Output power of x*g1 + y*g2 with unit-power x, y and correlation rho.
    for (double rho : {0.2, 0.5, 0.9}) {
      const auto [c, d] = CrossfadeGains(t, rho);
      EXPECT_NEAR(c * c + d * d + 2.0 * rho * c * d, 1.0, 1e-12);
    }
  }
}

TEST(CrossfadeTest, ResponseCorrelation) {
  const ImpulseResponse a({1.0, 2.0, 0.0}, kRate);
  EXPECT_NEAR(ResponseCorrelation(a, a), 1.0, 1e-15);
  EXPECT_NEAR(ResponseCorrelation(a, ImpulseResponse({0.0, 0.0, 5.0}, kRate)), 0.0,
              1e-15);
  EXPECT_EQ(ResponseCorrelation(a, ImpulseResponse({0.0}, kRate)), 0.0);
}

TEST(RenderWalkthroughTest, IdenticalResponsesAreTransparent) {
  CaseGenerator gen(73);
  const WalkthroughSpec spec = EightMeterWalk();
  const MonoSignal dry(gen.Signal(6 * kRate, 0.5), kRate);
  const ImpulseResponse ir =
      GenerateImpulseResponse(kCorridor, spec.source, {2.5, 5.0, 1.7},
                              ImageSourceConfig{20, 0.3, kRate});
  const WalkthroughRender render = RenderWalkthrough(
      kCorridor, spec, dry, [&](std::size_t, const Position&) { return ir; });
  ASSERT_EQ(render.positions.size(), 81u);
  EXPECT_EQ(render.pre_tail_samples, SecondsToSamples(8.0 / 1.39, kRate));
  EXPECT_NEAR(render.pre_tail_samples / static_cast<double>(kRate), 5.755, 0.02);
  std::vector<double> head(dry.samples().begin(),
                           dry.samples().begin() + render.pre_tail_samples);
  const std::vector<double> want = DirectConvolution(head, ir.vector());
  ASSERT_EQ(render.audio.size(), want.size());
  double err = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    err = std::max(err, std::abs(render.audio[i] - want[i]));
  }
  EXPECT_LE(err, 1e-4);
}

TEST(RenderWalkthroughTest, LevelRisesThenFallsPastTheSource) {
  // Free field, source 1 m beside the path midpoint, steady tone.
  const RoomSpec room{{40.0, 40.0, 10.0}, 0.5};
  WalkthroughSpec spec;
  spec.path_start = {10.0, 16.0, 5.0};
  spec.path_end = {10.0, 24.0, 5.0};
  spec.spacing = 0.5;
  spec.source = {11.0, 20.0, 5.0};
  std::vector<double> tone(7 * kRate);
  for (std::size_t i = 0; i < tone.size(); ++i) {
    tone[i] = std::sin(2.0 * std::numbers::pi * 1000.0 * i / kRate);
  }
  const WalkthroughRender render =
      RenderWalkthrough(room, spec, MonoSignal(tone, kRate),
                        MakeReferenceProvider(room, spec.source,
                                              ImageSourceConfig{0, 0.1, kRate}));
  const double step = spec.spacing / spec.speed;
  std::vector<double> rms;
  for (std::size_t m = 1; m + 1 < render.positions.size(); ++m) {
    // Middle half of each position's span, clear of the crossfades.
    const std::size_t a = SecondsToSamples((m - 0.25) * step, kRate);
    const std::size_t b = SecondsToSamples((m + 0.25) * step, kRate);
    double e = 0.0;
    for (std::size_t i = a; i < b; ++i) e += render.audio[i] * render.audio[i];
    rms.push_back(std::sqrt(e / (b - a)));
  }
  const std::size_t center = rms.size() / 2;
  for (std::size_t i = 1; i <= center; ++i) EXPECT_GT(rms[i], rms[i - 1]) << i;
  for (std::size_t i = center + 1; i < rms.size(); ++i) EXPECT_LT(rms[i], rms[i - 1]) << i;
}

TEST(RenderWalkthroughTest, DeterministicAcrossThreadCounts) {
  CaseGenerator gen(79);
  const WalkthroughSpec spec = EightMeterWalk();
  const MonoSignal dry(gen.Signal(6 * kRate, 0.5), kRate);
  const IrProvider provider =
      MakeReferenceProvider(kCorridor, spec.source, ImageSourceConfig{10, 0.2, kRate});
  setenv("REVERB_CALIB_THREADS", "1", 1);
  const WalkthroughRender a = RenderWalkthrough(kCorridor, spec, dry, provider);
  setenv("REVERB_CALIB_THREADS", "3", 1);
  const WalkthroughRender b = RenderWalkthrough(kCorridor, spec, dry, provider);
  unsetenv("REVERB_CALIB_THREADS");
  EXPECT_EQ(a.audio, b.audio);
}

TEST(RenderWalkthroughTest, Errors) {
  const WalkthroughSpec spec = EightMeterWalk();
  const MonoSignal dry(std::vector<double>(6 * kRate, 0.1), kRate);
  const IrProvider impulse = [](std::size_t, const Position&) {
    return ImpulseResponse({1.0}, kRate);
  };
  EXPECT_ROOMVERB_ERROR(
      RenderWalkthrough(kCorridor, spec, MonoSignal(std::vector<double>(kRate, 0.1), kRate),
                        impulse),
      ErrorCode::kDrySignalTooShort);
  WalkthroughSpec outside = spec;
  outside.path_end = {2.5, 10.0, 1.7};
  outside.path_start = {2.5, 2.0, 1.7};
  EXPECT_ROOMVERB_ERROR(RenderWalkthrough(kCorridor, outside, dry, impulse),
                        ErrorCode::kPositionOutsideRoom);
  WalkthroughSpec bad_source = spec;
  bad_source.source = {50.0, 5.0, 1.7};
  EXPECT_ROOMVERB_ERROR(RenderWalkthrough(kCorridor, bad_source, dry, impulse),
                        ErrorCode::kPositionOutsideRoom);
  EXPECT_ROOMVERB_ERROR(
      RenderWalkthrough(kCorridor, spec, dry,
                        [](std::size_t, const Position&) {
                          return ImpulseResponse({1.0}, 44100);
                        }),
      ErrorCode::kRateMismatch);
}

TEST(IrMethodTest, NamesRoundTrip) {
  EXPECT_EQ(ParseIrMethod("reference"), IrMethod::kReference);
  EXPECT_EQ(ParseIrMethod(IrMethodName(IrMethod::kSchroeder)), IrMethod::kSchroeder);
  EXPECT_ROOMVERB_ERROR(ParseIrMethod("raytrace"), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace roomverb
