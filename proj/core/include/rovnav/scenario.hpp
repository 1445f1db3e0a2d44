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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rovnav/controllers.hpp"
#include "rovnav/localization.hpp"
#include "rovnav/planner.hpp"

namespace rovnav {

inline constexpr int kScenarioSchemaVersion = 1;

/// Axis-aligned tank: x in [0, length], y in [0, width], z (down) in [0, depth].
struct TankBox {
  double length = 2.59;
  double width = 1.70;
  double depth = 0.61;

  bool contains(const Eigen::Vector3d& p) const;
  Eigen::Vector3d center() const { return {0.5 * length, 0.5 * width, 0.5 * depth}; }
};

/// Body-frame disturbance wrench tau_d(t) = constant + amplitude sin(2 pi f t + phase),
/// zero before `onset`.
struct DisturbanceSpec {
  Vector4 constant = Vector4::Zero();
  Vector4 amplitude = Vector4::Zero();
  double frequency_hz = 0.0;
  double phase = 0.0;
  double onset = 0.0;

  Vector4 at(double t) const;
  void validate() const;
};

/// Multiplicative plant perturbation relative to the configured plant block.
struct PlantPerturbation {
  double mass_scale = 1.0;
  double damping_scale = 1.0;
  double coriolis_scale = 1.0;
};

struct ImuSpec {
  double rate_hz = 100.0;
  Vector4 bias = Vector4::Zero();
  Vector4 sigma = Vector4::Zero();
};

struct LocalizationSpec {
  /// When false the controllers read the true state.
  bool enabled = true;
  TagMap map;
  Eigen::Vector3d camera_offset{0.1, 0.0, 0.0};
  double fov_half_angle = 0.87;  // rad
  double range = 3.0;            // m
  TagNoise tag_noise;
  double tag_rate_hz = 10.0;
  ImuSpec imu;
  ProcessNoise process;
  MeasurementNoise measurement;
  Vector8 initial_sigma = Vector8::Constant(0.01);
};

struct MissionSpec {
  BoundaryPolygon boundary;
  double margin = 0.4;
  double speed = 0.1;
  MissionConfig fsm;
  PlanarPose start;
};

struct Scenario {
  std::string name = "tank";
  std::uint64_t seed = 1;
  double dt = 0.01;
  double duration = 150.0;
  TankBox tank;

  ModelParams plant = ModelParams::bluerov2_nominal();
  PlantPerturbation plant_perturbation;
  ModelParams controller_params = ModelParams::bluerov2_nominal();
  ControllerKind controller = ControllerKind::nfc;
  NfcGains nfc_gains = NfcGains::bluerov2();
  PidGains pid_gains = PidGains::bluerov2();
  SaturationLimits saturation;

  MissionSpec mission;
  LocalizationSpec localization;
  DisturbanceSpec disturbance;

  /// Truth positions further than this from the tank centre abort the run.
  double safety_box = 10.0;

  /// Plant parameters with the perturbation applied.
  ModelParams effective_plant() const;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// Two tags per wall at one and two thirds of the wall length, at `depth`,
/// facing into the tank. Ids 0..7.
TagMap tank_wall_tags(const TankBox& tank, double depth);

/// The 2.59 m x 1.70 m tank at 0.35 m depth, 0.4 m margin and 0.1 m/s.
Scenario standard_tank_scenario();

/// YAML scenario, schema version 1. Relative tag-map paths resolve against
/// `base_dir`.
Scenario parse_scenario(const std::string& yaml_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace rovnav
