// Copyright (c) 2026 The rovnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rovnav: run inspection scenarios from the command line.
//
//   rovnav simulate <scenario.yaml> [--seed N] [--dt S] [--controller nfc|pid] [--out-dir DIR]
//   rovnav compare <scenario.yaml> [--seed N] [--dt S] [--out-dir DIR]
//   rovnav validate-gains <scenario.yaml> [--dt S]
//   rovnav plan <scenario.yaml> [--out FILE]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rovnav/episode.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::string out_dir = ".";
};

rovnav::Scenario load_with_overrides(const CommonOptions& opts) {
  rovnav::Scenario s = rovnav::load_scenario(opts.scenario_path);
  if (opts.seed) {
    s.seed = *opts.seed;
  }
  if (opts.dt) {
    s.dt = *opts.dt;
  }
  s.validate();
  return s;
}

std::string episode_stem(const rovnav::Scenario& s, rovnav::ControllerKind kind) {
  return fmt::format("{}_{}_seed{}", s.name, rovnav::to_string(kind), s.seed);
}

void write_episode_files(const fs::path& dir, const std::string& stem, const rovnav::EpisodeResult& result) {
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / (stem + ".csv"), std::ios::binary);
    rovnav::write_episode_csv(csv, result);
  }
  std::ofstream summary(dir / (stem + ".summary.json"), std::ios::binary);
  rovnav::write_episode_summary(summary, result);
}

int run_simulate(const CommonOptions& opts, const std::string& controller) {
  rovnav::Scenario s = load_with_overrides(opts);
  if (!controller.empty()) {
    s.controller = rovnav::controller_kind_from_string(controller);
  }
  const rovnav::EpisodeResult result = rovnav::run_episode(s);
  const std::string stem = episode_stem(s, s.controller);
  write_episode_files(opts.out_dir, stem, result);
  rovnav::write_episode_summary(std::cout, result);
  std::cout << "wrote " << (fs::path(opts.out_dir) / (stem + ".csv")).string() << '\n';
  return result.completed ? 0 : 1;
}

int run_compare(const CommonOptions& opts) {
  const rovnav::Scenario s = load_with_overrides(opts);
  const rovnav::ComparisonReport report = rovnav::compare_controllers(s);
  for (const auto& result : report.results) {
    write_episode_files(opts.out_dir, episode_stem(s, result.controller), result);
  }
  {
    std::ofstream table(fs::path(opts.out_dir) / fmt::format("{}_seed{}_comparison.txt", s.name, s.seed));
    rovnav::write_comparison(table, report);
  }
  rovnav::write_comparison(std::cout, report);
  return 0;
}

void print_stability(const char* label, const rovnav::StabilityReport& r) {
  std::cout << fmt::format("{}: {} (max real part {:.6g})\n", label, r.stable ? "stable" : "NOT stable",
                           r.spectral_abscissa);
  for (const auto& ev : r.eigenvalues) {
    std::cout << fmt::format("  {:+.6g} {:+.6g}i\n", ev.real(), ev.imag());
  }
}

int run_validate_gains(const CommonOptions& opts) {
  const rovnav::Scenario s = load_with_overrides(opts);
  const double v = s.mission.speed;
  const std::array<std::pair<std::string, rovnav::BodyVelocity>, 3> points{{
      {"nu = 0", rovnav::BodyVelocity{}},
      {fmt::format("nu = ({}, 0, 0, 0)", v), rovnav::BodyVelocity{v, 0.0, 0.0, 0.0}},
      {fmt::format("nu = (0, {}, 0, 0)", v), rovnav::BodyVelocity{0.0, v, 0.0, 0.0}},
  }};
  bool all_stable = true;
  for (const auto& [label, nu] : points) {
    const auto report = rovnav::verify_stability(s.nfc_gains, s.controller_params, nu);
    print_stability(label.c_str(), report);
    all_stable = all_stable && report.stable;
  }
  const auto sampled = rovnav::verify_sampled_stability(s.nfc_gains, s.controller_params, {}, s.dt);
  std::cout << fmt::format("sampled at dt = {} s: spectral radius {:.6g} ({})\n", s.dt, sampled.spectral_radius,
                           sampled.stable ? "stable" : "WARNING: unstable without saturation");
  return all_stable ? 0 : 2;
}

int run_plan(const CommonOptions& opts, const std::string& out_file) {
  const rovnav::Scenario s = load_with_overrides(opts);
  const rovnav::InspectionPlan plan =
      rovnav::build_plan(s.mission.boundary, s.mission.margin, s.mission.speed,
                         Eigen::Vector2d(s.mission.start.x, s.mission.start.y));
  if (out_file.empty()) {
    rovnav::write_waypoints_csv(std::cout, plan);
  } else {
    std::ofstream out(out_file, std::ios::binary);
    rovnav::write_waypoints_csv(out, plan);
  }
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_outputs) {
  cmd->add_option("scenario", opts.scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Override the scenario seed");
  cmd->add_option("--dt", opts.dt, "Override the integration/control step [s]");
  if (with_outputs) {
    cmd->add_option("--out-dir", opts.out_dir, "Directory for CSV and summary files");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ROV net-cage inspection simulator"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string controller;
  std::string plan_out;

  auto* simulate = app.add_subcommand("simulate", "Run one closed-loop episode");
  add_common(simulate, opts, true);
  simulate->add_option("--controller", controller, "Override the controller (nfc|pid)");

  auto* compare = app.add_subcommand("compare", "Run NFC and PID on the same seed and disturbance");
  add_common(compare, opts, true);

  auto* validate = app.add_subcommand("validate-gains", "Eigen-analysis of the NFC closed loop");
  add_common(validate, opts, false);

  auto* plan = app.add_subcommand("plan", "Print the inspection waypoints");
  add_common(plan, opts, false);
  plan->add_option("--out", plan_out, "Write the waypoint CSV to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      return run_simulate(opts, controller);
    }
    if (*compare) {
      return run_compare(opts);
    }
    if (*validate) {
      return run_validate_gains(opts);
    }
    if (*plan) {
      return run_plan(opts, plan_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "rovnav: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
