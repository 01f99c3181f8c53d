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

#include "roomverb/scenario.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "roomverb/error.h"
#include "roomverb/metrics.h"
#include "roomverb/parallel.h"
#include "roomverb/wav.h"

namespace roomverb {
namespace {

using nlohmann::json;

constexpr double kListenerHeight = 1.7;     // m
constexpr double kListenerWallGap = 1.0;    // m
constexpr std::uint32_t kAzimuthSeed = 2017;
constexpr double kStaticDryDuration = 3.0;  // s
constexpr double kWalkDryMargin = 0.5;      // s

double Uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "scenario config: " + what);
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) BadConfig("unknown key '" + key + "' in " + where);
  }
}

std::string SourceTag(std::size_t index) {
  std::ostringstream os;
  os << 's' << (index + 1 < 10 ? "0" : "") << (index + 1);
  return os.str();
}

json MetricsJson(const ImpulseResponse& ir) {
  json j;
  try {
    const AcousticMetrics m = MeasureMetrics(ir);
    j["rt60_s"] = m.rt60;
    j["drr_db"] = m.drr;
    j["onset_s"] = m.onset_time;
  } catch (const Error&) {
    j["rt60_s"] = nullptr;
    j["drr_db"] = nullptr;
    j["onset_s"] = static_cast<double>(DetectOnset(ir)) / ir.sample_rate();
  }
  return j;
}

std::string CsvNumber(const json& v) {
  if (v.is_null()) return "";
  std::ostringstream os;
  os.precision(9);
  os << v.get<double>();
  return os.str();
}

// Static-scene layout: three azimuths in [-45, -20] deg and four in
// [20, 45] deg, assigned to the seven distances by a seeded shuffle.
std::vector<double> StaticAzimuths(std::uint32_t seed) {
  std::mt19937 gen(seed);
  auto u = [&] { return static_cast<double>(gen()) / 4294967296.0; };
  std::vector<double> az;
  for (int i = 0; i < 3; ++i) az.push_back(std::round((-20.0 - 25.0 * u()) * 10) / 10);
  for (int i = 0; i < 4; ++i) az.push_back(std::round((20.0 + 25.0 * u()) * 10) / 10);
  for (std::size_t i = az.size() - 1; i > 0; --i) {
    std::swap(az[i], az[gen() % (i + 1)]);
  }
  return az;
}

ScenarioConfig StaticPreset(const std::string& name, double side) {
  ScenarioConfig c;
  c.name = name;
  c.room = RoomSpec{{side, side, 3.0}, 0.1, 343.0};
  const Position listener{side / 2.0, kListenerWallGap, kListenerHeight};
  c.listener = listener;
  const std::vector<double> distances{1.0, 1.7, 2.3, 3.0, 3.7, 4.3, 5.0};
  const std::vector<double> azimuths = StaticAzimuths(kAzimuthSeed);
  for (std::size_t i = 0; i < distances.size(); ++i) {
    // Azimuth 0 faces away from the near wall (+y); positive is to the right.
    const double rad = azimuths[i] * std::numbers::pi / 180.0;
    c.sources.push_back({listener.x + distances[i] * std::sin(rad),
                         listener.y + distances[i] * std::cos(rad),
                         kListenerHeight});
  }
  c.methods = {IrMethod::kReference, IrMethod::kSchroeder};
  c.output_dir = name;
  c.layout = {{"listener_wall_gap_m", kListenerWallGap},
              {"distances_m", distances},
              {"azimuths_deg", azimuths},
              {"azimuth_seed", kAzimuthSeed}};
  return c;
}

ScenarioConfig DynamicPreset() {
  ScenarioConfig c;
  c.name = "dynamic";
  c.room = RoomSpec{{45.0, 10.0, 3.0}, 0.1, 343.0};
  WalkthroughSpec walk;
  walk.path_start = {2.5, 1.0, kListenerHeight};
  walk.path_end = {2.5, 9.0, kListenerHeight};
  c.walkthrough = walk;
  std::vector<double> distances;
  for (int d = 10; d <= 40; d += 5) {
    distances.push_back(d);
    c.sources.push_back({2.5 + d, 5.0, kListenerHeight});
  }
  c.methods = {IrMethod::kReference, IrMethod::kSchroeder};
  c.output_dir = "dynamic";
  c.layout = {{"path_center", {2.5, 5.0, kListenerHeight}},
              {"distances_from_path_center_m", distances}};
  return c;
}

struct SourceOutput {
  json entry;
  std::vector<std::string> csv_rows;
};

std::string CsvRow(std::size_t index, double distance, std::string_view method,
                   const std::string& path, const json& metrics) {
  std::ostringstream os;
  os.precision(9);
  os << (index + 1) << ',' << distance << ',' << method << ',' << path << ','
     << CsvNumber(metrics["rt60_s"]) << ',' << CsvNumber(metrics["drr_db"])
     << ',' << CsvNumber(metrics["onset_s"]);
  return os.str();
}

SourceOutput RunSource(const ScenarioConfig& c, std::size_t index,
                       const MonoSignal& dry) {
  const Position& source = c.sources[index];
  const Position listener = ReferenceListener(c);
  const double distance = Distance(source, listener);
  const std::string tag = SourceTag(index);
  const bool wants_schroeder =
      std::find(c.methods.begin(), c.methods.end(), IrMethod::kSchroeder) !=
      c.methods.end();

  SourceOutput out;
  json artifacts = json::array();
  auto write = [&](const ImpulseResponse& ir, const std::string& file,
                   const std::string& kind, std::string_view method) {
    WriteWav(ir, c.output_dir / file);
    json m = MetricsJson(ir);
    json a = {{"kind", kind}, {"method", method}, {"path", file}};
    a.update(m);
    artifacts.push_back(a);
    if (kind != "early_ir") {
      out.csv_rows.push_back(CsvRow(index, distance, method, file, m));
    }
  };

  const ImpulseResponse full =
      GenerateImpulseResponse(c.room, source, listener, c.image_source);
  const ImpulseResponse early = EarlyPart(full, c.early_cutoff);
  write(full, tag + "_reference_ir.wav", "reference_ir", "reference");
  write(early, tag + "_early_ir.wav", "early_ir", "reference");

  std::optional<CalibrationResult> calibration;
  if (wants_schroeder) {
    const AcousticMetrics target = MeasureMetrics(full);
    calibration = Calibrate(early, target, c.schroeder, c.calibration);
    write(calibration->matched_ir, tag + "_schroeder_ir.wav", "calibrated_ir",
          "schroeder");
    out.entry["calibration"] = CalibrationReport(*calibration, target);
  }

  for (IrMethod method : c.methods) {
    const std::string file =
        tag + "_" + std::string(IrMethodName(method)) + "_stimulus.wav";
    MonoSignal stimulus = dry;
    if (c.listener) {
      const ImpulseResponse& ir =
          method == IrMethod::kReference ? full : calibration->matched_ir;
      stimulus = ApplyLevel(Convolve(dry, ir), c.source_power_db);
    } else {
      const WalkthroughRender render = RenderScenarioWalk(
          c, index, method, dry,
          calibration ? &*calibration : nullptr);
      stimulus = ApplyLevel(render.audio, c.source_power_db);
    }
    WriteWav(stimulus, c.output_dir / file);
    artifacts.push_back(
        {{"kind", "stimulus"}, {"method", IrMethodName(method)}, {"path", file}});
  }

  out.entry["index"] = index;
  out.entry["position"] = PositionToJson(source);
  out.entry["listener"] = PositionToJson(listener);
  out.entry["distance_m"] = distance;
  out.entry["artifacts"] = std::move(artifacts);
  return out;
}

}  // namespace

MonoSignal LoadDry(const ScenarioConfig& c) {
  if (!c.dry.path.empty()) return ReadWav(c.dry.path);
  double duration = c.dry.duration;
  if (duration <= 0.0) {
    duration = c.walkthrough ? c.walkthrough->Duration() + kWalkDryMargin
                             : kStaticDryDuration;
  }
  return SyntheticClaps(duration, c.image_source.sample_rate, c.dry.seed);
}

Position ReferenceListener(const ScenarioConfig& c) {
  if (c.listener) return *c.listener;
  const WalkthroughSpec& w = *c.walkthrough;
  return {(w.path_start.x + w.path_end.x) / 2, (w.path_start.y + w.path_end.y) / 2,
          (w.path_start.z + w.path_end.z) / 2};
}

WalkthroughRender RenderScenarioWalk(const ScenarioConfig& c,
                                     std::size_t source_index, IrMethod method,
                                     const MonoSignal& dry,
                                     const CalibrationResult* calibration) {
  if (!c.walkthrough) BadConfig("scenario has no walkthrough");
  if (source_index >= c.sources.size()) BadConfig("source index out of range");
  if (method == IrMethod::kSchroeder && calibration == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "the schroeder walk needs a calibration");
  }
  const Position& source = c.sources[source_index];
  WalkthroughSpec walk = *c.walkthrough;
  walk.source = source;
  const std::vector<Position> positions = walk.ListenerPositions();
  std::vector<std::optional<ImpulseResponse>> path_irs(positions.size());
  ParallelFor(positions.size(), [&](std::size_t m) {
    ImpulseResponse ir =
        GenerateImpulseResponse(c.room, source, positions[m], c.image_source);
    if (method == IrMethod::kSchroeder) {
      ir = ApplyCalibration(EarlyPart(ir, c.early_cutoff), *calibration);
    }
    path_irs[m] = std::move(ir);
  });
  return RenderWalkthrough(
      c.room, walk, dry,
      [&](std::size_t m, const Position&) { return *path_irs[m]; });
}

MonoSignal SyntheticClaps(double duration, int sample_rate, std::uint64_t seed) {
  constexpr double kPeriod = 0.5;       // s between claps
  constexpr double kFirstClap = 0.05;   // s
  constexpr double kBurst = 0.015;      // s
  constexpr double kDecay = 0.004;      // s
  const std::size_t length = std::max<std::size_t>(1, SecondsToSamples(duration, sample_rate));
  std::vector<double> samples(length, 0.0);
  std::mt19937_64 gen(seed);
  for (double start = kFirstClap; start < duration; start += kPeriod) {
    const double level = 0.4 + 0.1 * Uniform01(gen);
    const std::size_t first = SecondsToSamples(start, sample_rate);
    const std::size_t burst = SecondsToSamples(kBurst, sample_rate);
    for (std::size_t i = 0; i < burst && first + i < length; ++i) {
      const double t = static_cast<double>(i) / sample_rate;
      samples[first + i] = level * std::exp(-t / kDecay) * (2.0 * Uniform01(gen) - 1.0);
    }
  }
  return MonoSignal(std::move(samples), sample_rate);
}

void ScenarioConfig::Validate() const {
  room.Validate();
  image_source.Validate();
  calibration.Validate();
  schroeder.Validate(image_source.sample_rate);
  if (sources.empty()) BadConfig("at least one source is required");
  if (methods.empty()) BadConfig("at least one method is required");
  if (listener.has_value() == walkthrough.has_value()) {
    BadConfig("exactly one of listener and walkthrough must be given");
  }
  if (!(early_cutoff >= 0.0)) BadConfig("early_cutoff must be >= 0");
  if (listener && !room.Contains(*listener)) {
    throw Error(ErrorCode::kPositionOutsideRoom,
                "listener is not strictly inside the room");
  }
  std::vector<Position> path;
  if (walkthrough) {
    path = walkthrough->ListenerPositions();
    for (std::size_t m = 0; m < path.size(); ++m) {
      if (!room.Contains(path[m])) {
        throw Error(ErrorCode::kPositionOutsideRoom,
                    "walkthrough position " + std::to_string(m) +
                        " is not strictly inside the room");
      }
    }
  }
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!room.Contains(sources[i])) {
      throw Error(ErrorCode::kPositionOutsideRoom,
                  "source " + std::to_string(i) +
                      " is not strictly inside the room");
    }
    if ((listener && sources[i] == *listener) ||
        std::find(path.begin(), path.end(), sources[i]) != path.end()) {
      throw Error(ErrorCode::kCoincidentSourceListener,
                  "source " + std::to_string(i) + " coincides with the listener");
    }
  }
}

Position PositionFromJson(const json& j) {
  if (!j.is_array() || j.size() != 3) BadConfig("positions are [x, y, z] arrays");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json PositionToJson(const Position& p) { return json::array({p.x, p.y, p.z}); }

json RoomToJson(const RoomSpec& room) {
  return {{"dimensions", room.dimensions},
          {"absorption", room.absorption},
          {"speed_of_sound", room.speed_of_sound}};
}

RoomSpec RoomFromJson(const json& j) {
  RejectUnknownKeys(j, {"dimensions", "absorption", "speed_of_sound"}, "room");
  RoomSpec room;
  const auto dims = j.at("dimensions").get<std::vector<double>>();
  if (dims.size() != 3) BadConfig("room dimensions need three values");
  room.dimensions = {dims[0], dims[1], dims[2]};
  room.absorption = j.value("absorption", room.absorption);
  room.speed_of_sound = j.value("speed_of_sound", room.speed_of_sound);
  room.Validate();
  return room;
}

json SchroederParamsToJson(const SchroederParams& p) {
  return {{"comb_delays", p.comb_delays},
          {"comb_feedbacks", p.comb_feedbacks},
          {"allpass_delays", p.allpass_delays},
          {"allpass_gain", p.allpass_gain},
          {"pre_delay", p.pre_delay},
          {"damping", p.damping},
          {"wet_gain", p.wet_gain},
          {"dry_gain", p.dry_gain}};
}

SchroederParams SchroederParamsFromJson(const json& j) {
  RejectUnknownKeys(j,
                    {"comb_delays", "comb_feedbacks", "rt60", "allpass_delays",
                     "allpass_gain", "pre_delay", "damping", "wet_gain",
                     "dry_gain"},
                    "schroeder");
  SchroederParams p = SchroederParams::Default();
  if (j.contains("comb_delays")) {
    p.comb_delays = j["comb_delays"].get<std::vector<double>>();
  }
  if (j.contains("comb_feedbacks") && j.contains("rt60")) {
    BadConfig("give either comb_feedbacks or rt60, not both");
  }
  if (j.contains("comb_feedbacks")) {
    p.comb_feedbacks = j["comb_feedbacks"].get<std::vector<double>>();
  } else {
    p = p.WithReverbTime(j.value("rt60", kDefaultReverbTime));
  }
  if (j.contains("allpass_delays")) {
    p.allpass_delays = j["allpass_delays"].get<std::vector<double>>();
  }
  p.allpass_gain = j.value("allpass_gain", p.allpass_gain);
  p.pre_delay = j.value("pre_delay", p.pre_delay);
  p.damping = j.value("damping", p.damping);
  p.wet_gain = j.value("wet_gain", p.wet_gain);
  p.dry_gain = j.value("dry_gain", p.dry_gain);
  return p;
}

json CalibrationGridToJson(const CalibrationGrid& g) {
  json j = {{"onset_offsets", g.onset_offsets},
            {"scales", g.scales},
            {"max_iterations", g.max_iterations},
            {"rt60_relative_tolerance", g.rt60_relative_tolerance},
            {"drr_tolerance", g.drr_tolerance},
            {"reverb_start", g.reverb_start},
            {"tail_length_rt60s", g.tail_length_rt60s}};
  if (g.rt60_tolerance) j["rt60_tolerance"] = *g.rt60_tolerance;
  return j;
}

CalibrationGrid CalibrationGridFromJson(const json& j) {
  RejectUnknownKeys(j,
                    {"onset_offsets", "scales", "max_iterations",
                     "rt60_tolerance", "rt60_relative_tolerance",
                     "drr_tolerance", "reverb_start", "tail_length_rt60s"},
                    "calibration");
  CalibrationGrid g = CalibrationGrid::Default();
  if (j.contains("onset_offsets")) {
    g.onset_offsets = j["onset_offsets"].get<std::vector<double>>();
  }
  if (j.contains("scales")) g.scales = j["scales"].get<std::vector<double>>();
  g.max_iterations = j.value("max_iterations", g.max_iterations);
  if (j.contains("rt60_tolerance")) {
    g.rt60_tolerance = j["rt60_tolerance"].get<double>();
  }
  g.rt60_relative_tolerance =
      j.value("rt60_relative_tolerance", g.rt60_relative_tolerance);
  g.drr_tolerance = j.value("drr_tolerance", g.drr_tolerance);
  g.reverb_start = j.value("reverb_start", g.reverb_start);
  g.tail_length_rt60s = j.value("tail_length_rt60s", g.tail_length_rt60s);
  g.Validate();
  return g;
}

json CalibrationReport(const CalibrationResult& r, const AcousticMetrics& target) {
  return {{"target_rt60_s", target.rt60},
          {"target_drr_db", target.drr},
          {"chosen_onset_s", r.chosen_onset},
          {"chosen_onset_offset_s", r.chosen_onset_offset},
          {"chosen_scale", r.chosen_scale},
          {"achieved_rt60_s", r.achieved_rt60},
          {"achieved_drr_db", r.achieved_drr},
          {"errors",
           {{"rt60_s", r.rt60_error},
            {"drr_db", r.drr_error},
            {"rt60_tolerance_s", r.rt60_tolerance},
            {"drr_tolerance_db", r.drr_tolerance}}},
          {"candidates", r.candidates_evaluated}};
}

ScenarioConfig ScenarioFromJson(const json& j,
                                const std::filesystem::path& base_dir) {
  RejectUnknownKeys(j,
                    {"name", "room", "sources", "listener", "walkthrough",
                     "method", "methods", "image_source", "early_cutoff",
                     "calibration", "schroeder", "dry", "source_power_db",
                     "output_dir", "layout", "description"},
                    "scenario");
  ScenarioConfig c;
  c.name = j.value("name", std::string("scenario"));
  c.room = RoomFromJson(j.at("room"));
  for (const auto& s : j.at("sources")) c.sources.push_back(PositionFromJson(s));
  if (j.contains("listener")) c.listener = PositionFromJson(j["listener"]);
  if (j.contains("walkthrough")) {
    const json& w = j["walkthrough"];
    RejectUnknownKeys(w, {"start", "end", "spacing", "speed", "crossfade"},
                      "walkthrough");
    WalkthroughSpec spec;
    spec.path_start = PositionFromJson(w.at("start"));
    spec.path_end = PositionFromJson(w.at("end"));
    spec.spacing = w.value("spacing", spec.spacing);
    spec.speed = w.value("speed", spec.speed);
    spec.crossfade = w.value("crossfade", spec.crossfade);
    c.walkthrough = spec;
  }
  if (j.contains("method") && j.contains("methods")) {
    BadConfig("give either method or methods");
  }
  if (j.contains("method")) {
    c.methods.push_back(ParseIrMethod(j["method"].get<std::string>()));
  } else if (j.contains("methods")) {
    for (const auto& m : j["methods"]) {
      c.methods.push_back(ParseIrMethod(m.get<std::string>()));
    }
  } else {
    BadConfig("method is required");
  }
  if (j.contains("image_source")) {
    const json& is = j["image_source"];
    RejectUnknownKeys(is, {"max_order", "duration", "sample_rate"},
                      "image_source");
    c.image_source.max_order = is.value("max_order", c.image_source.max_order);
    c.image_source.duration = is.value("duration", c.image_source.duration);
    c.image_source.sample_rate =
        is.value("sample_rate", c.image_source.sample_rate);
  }
  c.early_cutoff = j.value("early_cutoff", c.early_cutoff);
  if (j.contains("calibration")) {
    c.calibration = CalibrationGridFromJson(j["calibration"]);
  }
  if (j.contains("schroeder")) {
    c.schroeder = SchroederParamsFromJson(j["schroeder"]);
  }
  if (j.contains("dry")) {
    const json& d = j["dry"];
    RejectUnknownKeys(d, {"path", "seed", "duration"}, "dry");
    if (d.contains("path")) {
      c.dry.path = base_dir / d["path"].get<std::string>();
    }
    c.dry.seed = d.value("seed", c.dry.seed);
    c.dry.duration = d.value("duration", c.dry.duration);
  }
  c.source_power_db = j.value("source_power_db", c.source_power_db);
  c.output_dir = base_dir / j.value("output_dir", c.name);
  if (j.contains("layout")) c.layout = j["layout"];
  c.Validate();
  return c;
}

json ScenarioToJson(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["room"] = RoomToJson(c.room);
  j["sources"] = json::array();
  for (const auto& s : c.sources) j["sources"].push_back(PositionToJson(s));
  if (c.listener) j["listener"] = PositionToJson(*c.listener);
  if (c.walkthrough) {
    j["walkthrough"] = {{"start", PositionToJson(c.walkthrough->path_start)},
                        {"end", PositionToJson(c.walkthrough->path_end)},
                        {"spacing", c.walkthrough->spacing},
                        {"speed", c.walkthrough->speed},
                        {"crossfade", c.walkthrough->crossfade}};
  }
  j["methods"] = json::array();
  for (IrMethod m : c.methods) j["methods"].push_back(IrMethodName(m));
  j["image_source"] = {{"max_order", c.image_source.max_order},
                       {"duration", c.image_source.duration},
                       {"sample_rate", c.image_source.sample_rate}};
  j["early_cutoff"] = c.early_cutoff;
  j["calibration"] = CalibrationGridToJson(c.calibration);
  j["schroeder"] = SchroederParamsToJson(c.schroeder);
  json dry = {{"seed", c.dry.seed}, {"duration", c.dry.duration}};
  if (!c.dry.path.empty()) dry["path"] = c.dry.path.generic_string();
  j["dry"] = dry;
  j["source_power_db"] = c.source_power_db;
  j["output_dir"] = c.output_dir.generic_string();
  if (!c.layout.is_null()) j["layout"] = c.layout;
  return j;
}

std::vector<std::string> PresetNames() {
  return {"static-small", "static-large", "dynamic"};
}

ScenarioConfig PresetScenario(const std::string& name) {
  ScenarioConfig c;
  if (name == "static-small") {
    c = StaticPreset(name, 9.5);
  } else if (name == "static-large") {
    c = StaticPreset(name, 13.0);
  } else if (name == "dynamic") {
    c = DynamicPreset();
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + name + "'");
  }
  c.Validate();
  return c;
}

json RunScenario(const ScenarioConfig& config) {
  config.Validate();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError, "cannot create " +
                                         config.output_dir.string() + ": " +
                                         ec.message());
  }
  const MonoSignal dry = LoadDry(config);

  json sources = json::array();
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < config.sources.size(); ++i) {
    SourceOutput out;
    try {
      out = RunSource(config, i, dry);
    } catch (const Error& e) {
      throw Error(e.code(), "source " + std::to_string(i) + ": " + e.what());
    }
    sources.push_back(std::move(out.entry));
    rows.insert(rows.end(), out.csv_rows.begin(), out.csv_rows.end());
  }

  const std::filesystem::path csv_path = config.output_dir / "metrics.csv";
  {
    std::ofstream csv(csv_path, std::ios::trunc);
    csv << "source,distance_m,method,path,rt60_s,drr_db,onset_s\n";
    for (const auto& row : rows) csv << row << '\n';
    if (!csv) throw Error(ErrorCode::kIoError, "cannot write " + csv_path.string());
  }

  json manifest;
  manifest["scenario"] = config.name;
  manifest["room"] = RoomToJson(config.room);
  manifest["kind"] = config.listener ? "static" : "walkthrough";
  if (!config.layout.is_null()) manifest["layout"] = config.layout;
  manifest["source_power_db"] = config.source_power_db;
  manifest["metrics_csv"] = "metrics.csv";
  manifest["sources"] = std::move(sources);

  const std::filesystem::path manifest_path = config.output_dir / "manifest.json";
  std::ofstream file(manifest_path, std::ios::trunc);
  file << manifest.dump(2) << '\n';
  if (!file) {
    throw Error(ErrorCode::kIoError, "cannot write " + manifest_path.string());
  }
  return manifest;
}

}  // namespace roomverb
