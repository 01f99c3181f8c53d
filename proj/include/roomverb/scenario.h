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

#ifndef ROOMVERB_SCENARIO_H_
#define ROOMVERB_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "roomverb/auralize.h"
#include "roomverb/calibration.h"
#include "roomverb/core.h"
#include "roomverb/schroeder.h"
#include "roomverb/shoebox.h"

namespace roomverb {

// Dry program material: a WAV file, or a seeded synthetic clap train when
// |path| is empty.
struct DrySpec {
  std::filesystem::path path;
  std::uint64_t seed = 1;
  double duration = 0.0;  // s; 0 picks a length that covers the scene.
};

// Seeded noise-burst clap train, deterministic on every platform.
MonoSignal SyntheticClaps(double duration, int sample_rate, std::uint64_t seed);

struct ScenarioConfig {
  std::string name;
  RoomSpec room;
  std::vector<Position> sources;
  // Exactly one of |listener| (static scene) and |walkthrough| (moving
  // listener) is set. The walkthrough's own source field is ignored; every
  // entry of |sources| gets its own walk.
  std::optional<Position> listener;
  std::optional<WalkthroughSpec> walkthrough;
  std::vector<IrMethod> methods;
  ImageSourceConfig image_source;
  double early_cutoff = kEarlyReflectionCutoff;
  CalibrationGrid calibration = CalibrationGrid::Default();
  SchroederParams schroeder = SchroederParams::Default();
  DrySpec dry;
  double source_power_db = 78.0;
  std::filesystem::path output_dir;
  // Informational block carried through to the manifest (preset layout).
  nlohmann::json layout;

  // Throws kInvalidArgument / kPositionOutsideRoom naming the offending
  // source index.
  void Validate() const;
};

// JSON schema shared by the CLI and the shipped presets. Relative dry and
// output paths are resolved against |base_dir|.
ScenarioConfig ScenarioFromJson(const nlohmann::json& j,
                                const std::filesystem::path& base_dir = {});
nlohmann::json ScenarioToJson(const ScenarioConfig& config);

nlohmann::json SchroederParamsToJson(const SchroederParams& params);
// Missing keys keep their defaults. "rt60" may replace "comb_feedbacks".
SchroederParams SchroederParamsFromJson(const nlohmann::json& j);
nlohmann::json CalibrationGridToJson(const CalibrationGrid& grid);
// Missing keys keep CalibrationGrid::Default() values.
CalibrationGrid CalibrationGridFromJson(const nlohmann::json& j);
nlohmann::json RoomToJson(const RoomSpec& room);
RoomSpec RoomFromJson(const nlohmann::json& j);
Position PositionFromJson(const nlohmann::json& j);
nlohmann::json PositionToJson(const Position& p);
nlohmann::json CalibrationReport(const CalibrationResult& result,
                                 const AcousticMetrics& target);

// Static listener, or the midpoint of the walking path.
Position ReferenceListener(const ScenarioConfig& config);

// Dry audio named by config.dry, or the synthetic clap train.
MonoSignal LoadDry(const ScenarioConfig& config);

// Renders the walk past source |source_index| with |method|. The Schroeder
// method needs the calibration measured at ReferenceListener(); it is
// applied to every position's early response.
WalkthroughRender RenderScenarioWalk(const ScenarioConfig& config,
                                     std::size_t source_index, IrMethod method,
                                     const MonoSignal& dry,
                                     const CalibrationResult* calibration);

// "static-small", "static-large" or "dynamic".
std::vector<std::string> PresetNames();
ScenarioConfig PresetScenario(const std::string& name);

// Runs every source pipeline, writes WAVs, metrics.csv and manifest.json to
// config.output_dir and returns the manifest. Output is byte-identical for
// identical configs.
nlohmann::json RunScenario(const ScenarioConfig& config);

}  // namespace roomverb

#endif  // ROOMVERB_SCENARIO_H_
