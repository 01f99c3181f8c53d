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

// Command-line front end: impulse response generation, reverberator
// rendering, metrics, calibration, auralization, walkthroughs, distance
// fits and preset scenarios.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "roomverb/analysis.h"
#include "roomverb/auralize.h"
#include "roomverb/calibration.h"
#include "roomverb/error.h"
#include "roomverb/metrics.h"
#include "roomverb/scenario.h"
#include "roomverb/schroeder.h"
#include "roomverb/shoebox.h"
#include "roomverb/wav.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roomverb;

namespace {

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument,
                path.string() + ": invalid JSON: " + e.what());
  }
}

void WriteText(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

Position ToPosition(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " needs three comma-separated values");
  }
  return {v[0], v[1], v[2]};
}

RoomSpec ToRoom(const std::vector<double>& dims, double absorption, double c) {
  if (dims.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "--room needs three comma-separated values");
  }
  RoomSpec room{{dims[0], dims[1], dims[2]}, absorption, c};
  room.Validate();
  return room;
}

std::string FormatNumber(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

// Room and geometry flags shared by genir and calibrate.
struct RoomArgs {
  std::vector<double> room;
  double absorption = 0.1;
  double speed_of_sound = 343.0;
  std::vector<double> source;
  std::vector<double> listener;
  ImageSourceConfig image;

  void Add(CLI::App* app, bool required) {
    auto* r = app->add_option("--room", room, "Room size Lx,Ly,Lz (m)")
                  ->delimiter(',')->expected(3);
    auto* s = app->add_option("--source", source, "Source x,y,z (m)")
                  ->delimiter(',')->expected(3);
    auto* l = app->add_option("--listener", listener, "Listener x,y,z (m)")
                  ->delimiter(',')->expected(3);
    if (required) {
      r->required();
      s->required();
      l->required();
    }
    app->add_option("--absorption", absorption, "Average wall absorption")
        ->capture_default_str();
    app->add_option("--speed-of-sound", speed_of_sound, "m/s")
        ->capture_default_str();
    app->add_option("--order", image.max_order, "Maximum reflection order")
        ->capture_default_str();
    app->add_option("--duration", image.duration, "IR length (s)")
        ->capture_default_str();
    app->add_option("--rate", image.sample_rate, "Sample rate (Hz)")
        ->capture_default_str();
  }

  bool Given() const { return !room.empty(); }
};

struct Options {
  // genir
  RoomArgs genir_room;
  std::string genir_out;
  std::string genir_early;
  double genir_cutoff = kEarlyReflectionCutoff;
  // reverb
  std::string reverb_config;
  double reverb_rt60 = 0.0;
  double reverb_duration = 2.0;
  int reverb_rate = kCanonicalSampleRate;
  std::string reverb_out;
  // metrics
  std::vector<std::string> metrics_files;
  double fit_start = -5.0;
  double fit_end = -35.0;
  bool no_extrapolate = false;
  std::string metrics_out;
  // calibrate
  std::string cal_reference;
  std::string cal_early;
  RoomArgs cal_room;
  std::string cal_grid;
  std::string cal_schroeder;
  double cal_cutoff = kEarlyReflectionCutoff;
  std::string cal_out;
  std::string cal_report;
  // auralize
  std::string aur_dry;
  std::string aur_ir;
  std::string aur_out;
  double aur_level = NAN;
  // walkthrough
  std::string walk_scenario;
  std::string walk_out;
  // fit
  std::string fit_input;
  std::string fit_model = "power";
  std::string fit_out;
  // run
  std::string run_preset;
  std::string run_config;
  std::string run_output_dir;
  std::string run_dry;
  // preset
  std::string preset_name;
};

void RunGenir(const Options& o) {
  const RoomArgs& a = o.genir_room;
  const RoomSpec room = ToRoom(a.room, a.absorption, a.speed_of_sound);
  const ImpulseResponse ir = GenerateImpulseResponse(
      room, ToPosition(a.source, "--source"),
      ToPosition(a.listener, "--listener"), a.image);
  WriteWav(ir, o.genir_out);
  if (!o.genir_early.empty()) {
    WriteWav(EarlyPart(ir, o.genir_cutoff), o.genir_early);
  }
}

void RunReverb(const Options& o) {
  SchroederParams params = SchroederParams::Default();
  if (!o.reverb_config.empty()) {
    params = SchroederParamsFromJson(ReadJsonFile(o.reverb_config));
  }
  if (o.reverb_rt60 > 0.0) params = params.WithReverbTime(o.reverb_rt60);
  WriteWav(RenderImpulseResponse(params, o.reverb_duration, o.reverb_rate),
           o.reverb_out);
}

void RunMetrics(const Options& o) {
  DecayFitConfig cfg{o.fit_start, o.fit_end, !o.no_extrapolate};
  cfg.Validate();
  std::string csv = "path,rt60_s,drr_db,onset_s\n";
  for (const auto& path : o.metrics_files) {
    const AcousticMetrics m =
        MeasureMetrics(AsImpulseResponse(ReadWav(path)), cfg);
    csv += path + "," + FormatNumber(m.rt60) + "," + FormatNumber(m.drr) + "," +
           FormatNumber(m.onset_time) + "\n";
  }
  WriteText(csv, o.metrics_out);
}

void RunCalibrate(const Options& o) {
  const SchroederParams tail = o.cal_schroeder.empty()
                                   ? SchroederParams::Default()
                                   : SchroederParamsFromJson(ReadJsonFile(o.cal_schroeder));
  const CalibrationGrid grid = o.cal_grid.empty()
                                   ? CalibrationGrid::Default()
                                   : CalibrationGridFromJson(ReadJsonFile(o.cal_grid));

  const bool from_files = !o.cal_reference.empty();
  if (from_files == o.cal_room.Given()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give either --reference/--early or --room/--source/--listener");
  }
  AcousticMetrics target;
  CalibrationResult result = [&] {
    if (from_files) {
      const ImpulseResponse full = AsImpulseResponse(ReadWav(o.cal_reference));
      const ImpulseResponse early =
          o.cal_early.empty() ? EarlyPart(full, o.cal_cutoff)
                              : AsImpulseResponse(ReadWav(o.cal_early));
      target = MeasureMetrics(full);
      return Calibrate(early, target, tail, grid);
    }
    const RoomArgs& a = o.cal_room;
    ShoeboxCalibration sc = CalibrateShoebox(
        ToRoom(a.room, a.absorption, a.speed_of_sound),
        ToPosition(a.source, "--source"), ToPosition(a.listener, "--listener"),
        a.image, tail, grid, o.cal_cutoff);
    target = sc.target;
    return std::move(sc.result);
  }();
  WriteWav(result.matched_ir, o.cal_out);
  WriteText(CalibrationReport(result, target).dump(2) + "\n", o.cal_report);
}

void RunAuralize(const Options& o) {
  MonoSignal out = Convolve(ReadWav(o.aur_dry), AsImpulseResponse(ReadWav(o.aur_ir)));
  if (!std::isnan(o.aur_level)) out = ApplyLevel(out, o.aur_level);
  WriteWav(out, o.aur_out);
}

void RunWalkthrough(const Options& o) {
  json j = ReadJsonFile(o.walk_scenario);
  if (j.contains("source")) {
    if (j.contains("sources")) {
      throw Error(ErrorCode::kInvalidArgument, "give source or sources, not both");
    }
    j["sources"] = json::array({j["source"]});
    j.erase("source");
  }
  const bool level = j.contains("source_power_db");
  const fs::path base = fs::path(o.walk_scenario).parent_path();
  const ScenarioConfig config = ScenarioFromJson(j, base);
  if (config.methods.size() != 1 || config.sources.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "walkthrough scenarios take one source and one method");
  }
  const MonoSignal dry = LoadDry(config);
  std::optional<CalibrationResult> calibration;
  if (config.methods[0] == IrMethod::kSchroeder) {
    calibration =
        CalibrateShoebox(config.room, config.sources[0],
                         ReferenceListener(config), config.image_source,
                         config.schroeder, config.calibration, config.early_cutoff)
            .result;
  }
  WalkthroughRender render = RenderScenarioWalk(
      config, 0, config.methods[0], dry, calibration ? &*calibration : nullptr);
  WriteWav(level ? ApplyLevel(render.audio, config.source_power_db) : render.audio,
           o.walk_out);
}

std::vector<DistanceObservation> ReadObservations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<DistanceObservation> rows;
  std::string line;
  bool header_checked = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "expected actual_m,perceived_m rows");
    }
    if (!header_checked) {
      header_checked = true;
      if (line.substr(0, comma) == "actual_m") continue;
    }
    try {
      rows.push_back({std::stod(line.substr(0, comma)),
                      std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "unparseable row: " + line);
    }
  }
  return rows;
}

void RunFit(const Options& o) {
  const auto rows = ReadObservations(o.fit_input);
  json out;
  if (o.fit_model == "power") {
    // slope/intercept describe the log-log line behind k and a.
    const PowerFit fit = FitPowerLaw(rows);
    out = {{"model", "power"},       {"k", fit.k},
           {"a", fit.a},             {"slope", fit.a},
           {"intercept", std::log(fit.k)}, {"r_squared", fit.r_squared}};
  } else if (o.fit_model == "linear") {
    const LinearFit fit = FitLinear(rows);
    out = {{"model", "linear"},      {"k", nullptr},
           {"a", nullptr},           {"slope", fit.slope},
           {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
  } else {
    throw Error(ErrorCode::kInvalidArgument, "--model must be power or linear");
  }
  WriteText(out.dump(2) + "\n", o.fit_out);
}

void RunRun(const Options& o) {
  if (o.run_preset.empty() == o.run_config.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of --preset and --config");
  }
  ScenarioConfig config =
      o.run_preset.empty()
          ? ScenarioFromJson(ReadJsonFile(o.run_config),
                             fs::path(o.run_config).parent_path())
          : PresetScenario(o.run_preset);
  if (!o.run_output_dir.empty()) config.output_dir = o.run_output_dir;
  if (!o.run_dry.empty()) config.dry.path = o.run_dry;
  const json manifest = RunScenario(config);
  std::cout << (config.output_dir / "manifest.json").string() << "\n";
  (void)manifest;
}

int ReportError(std::string_view code, const std::string& message,
                json extra = json::object()) {
  json err = {{"error", code}, {"message", message}};
  err.update(extra);
  std::cerr << err.dump() << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roomverb: room impulse responses, Schroeder calibration and auralization"};
  app.require_subcommand(1);
  Options o;

  auto* genir = app.add_subcommand("genir", "Image-source impulse response of a shoebox room");
  o.genir_room.Add(genir, true);
  genir->add_option("-o,--output", o.genir_out, "Output WAV")->required();
  genir->add_option("--early", o.genir_early, "Also write the early part here");
  genir->add_option("--cutoff", o.genir_cutoff, "Early part length after onset (s)")
      ->capture_default_str();

  auto* reverb = app.add_subcommand("reverb", "Render a Schroeder reverberator impulse response");
  reverb->add_option("--config", o.reverb_config, "Reverberator parameters (JSON)");
  reverb->add_option("--rt60", o.reverb_rt60, "Set every comb feedback for this RT60 (s)");
  reverb->add_option("--duration", o.reverb_duration, "s")->capture_default_str();
  reverb->add_option("--rate", o.reverb_rate, "Hz")->capture_default_str();
  reverb->add_option("-o,--output", o.reverb_out, "Output WAV")->required();

  auto* metrics = app.add_subcommand("metrics", "RT60, DRR and onset of impulse responses (CSV)");
  metrics->add_option("files", o.metrics_files, "IR WAV files")->required();
  metrics->add_option("--fit-start", o.fit_start, "dB")->capture_default_str();
  metrics->add_option("--fit-end", o.fit_end, "dB")->capture_default_str();
  metrics->add_flag("--no-extrapolate", o.no_extrapolate,
                    "Report the window's own decay time instead of 60 dB");
  metrics->add_option("-o,--output", o.metrics_out, "CSV output (default stdout)");

  auto* calibrate = app.add_subcommand("calibrate", "Match a Schroeder tail to a reference IR");
  calibrate->add_option("--reference", o.cal_reference, "Full reference IR WAV");
  calibrate->add_option("--early", o.cal_early, "Early IR WAV (default: cut from reference)");
  o.cal_room.Add(calibrate, false);
  calibrate->add_option("--grid", o.cal_grid, "Calibration grid (JSON)");
  calibrate->add_option("--schroeder", o.cal_schroeder, "Tail template (JSON)");
  calibrate->add_option("--cutoff", o.cal_cutoff, "Early part length after onset (s)")
      ->capture_default_str();
  calibrate->add_option("-o,--output", o.cal_out, "Matched IR WAV")->required();
  calibrate->add_option("--report", o.cal_report, "JSON report (default stdout)");

  auto* auralize = app.add_subcommand("auralize", "Convolve dry audio with an IR");
  auralize->add_option("--dry", o.aur_dry, "Dry WAV")->required();
  auralize->add_option("--ir", o.aur_ir, "IR WAV")->required();
  auralize->add_option("--level", o.aur_level, "Source level in dB (94 dB = full scale)");
  auralize->add_option("-o,--output", o.aur_out, "Output WAV")->required();

  auto* walkthrough = app.add_subcommand("walkthrough", "Render a moving-listener stimulus");
  walkthrough->add_option("--scenario", o.walk_scenario, "Walkthrough scenario (JSON)")
      ->required();
  walkthrough->add_option("-o,--output", o.walk_out, "Output WAV")->required();

  auto* fit = app.add_subcommand("fit", "Fit perceived vs actual distance");
  fit->add_option("--input", o.fit_input, "CSV with actual_m,perceived_m")->required();
  fit->add_option("--model", o.fit_model, "power or linear")->capture_default_str();
  fit->add_option("-o,--output", o.fit_out, "JSON output (default stdout)");

  auto* run = app.add_subcommand("run", "Run a scenario end to end");
  run->add_option("--preset", o.run_preset, "static-small, static-large or dynamic");
  run->add_option("--config", o.run_config, "Scenario JSON");
  run->add_option("--output-dir", o.run_output_dir, "Override the output directory");
  run->add_option("--dry", o.run_dry, "Dry WAV (default: synthetic claps)");

  auto* preset = app.add_subcommand("preset", "Print a built-in scenario as JSON");
  preset->add_option("name", o.preset_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError(ErrorName(ErrorCode::kInvalidArgument), e.what());
  }

  try {
    if (*genir) RunGenir(o);
    if (*reverb) RunReverb(o);
    if (*metrics) RunMetrics(o);
    if (*calibrate) RunCalibrate(o);
    if (*auralize) RunAuralize(o);
    if (*walkthrough) RunWalkthrough(o);
    if (*fit) RunFit(o);
    if (*run) RunRun(o);
    if (*preset) std::cout << ScenarioToJson(PresetScenario(o.preset_name)).dump(2) << "\n";
  } catch (const NoMatchError& e) {
    return ReportError(ErrorName(e.code()), e.what(),
                       {{"candidates", e.candidates_evaluated},
                        {"best_rt60_error_s", std::isnan(e.best_rt60_error)
                                                  ? json(nullptr)
                                                  : json(e.best_rt60_error)},
                        {"best_drr_error_db", std::isnan(e.best_drr_error)
                                                  ? json(nullptr)
                                                  : json(e.best_drr_error)}});
  } catch (const Error& e) {
    return ReportError(ErrorName(e.code()), e.what());
  } catch (const json::exception& e) {
    return ReportError(ErrorName(ErrorCode::kInvalidArgument), e.what());
  }
  return 0;
}
