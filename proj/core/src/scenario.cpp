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

#include "rovnav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace rovnav {

bool TankBox::contains(const Eigen::Vector3d& p) const {
  return p.x() >= 0.0 && p.x() <= length && p.y() >= 0.0 && p.y() <= width && p.z() >= 0.0 && p.z() <= depth;
}

Vector4 DisturbanceSpec::at(double t) const {
  if (t < onset) {
    return Vector4::Zero();
  }
  return constant + amplitude * std::sin(kTwoPi * frequency_hz * t + phase);
}

void DisturbanceSpec::validate() const {
  if (!(frequency_hz >= 0.0)) {
    throw std::invalid_argument("DisturbanceSpec: frequency must be non-negative");
  }
  if (!constant.allFinite() || !amplitude.allFinite() || !std::isfinite(phase) || !std::isfinite(onset)) {
    throw std::invalid_argument("DisturbanceSpec: non-finite value");
  }
}

ModelParams Scenario::effective_plant() const {
  ModelParams p = plant;
  p.mass *= plant_perturbation.mass_scale;
  p.linear_damping *= plant_perturbation.damping_scale;
  p.quadratic_damping *= plant_perturbation.damping_scale;
  p.coriolis_m11 *= plant_perturbation.coriolis_scale;
  p.coriolis_m22 *= plant_perturbation.coriolis_scale;
  return p;
}

void Scenario::validate() const {
  if (!(dt > 0.0) || dt > kMaxStepSeconds) {
    throw std::invalid_argument("scenario: dt must lie in (0, 0.05]");
  }
  if (!(duration > 0.0)) {
    throw std::invalid_argument("scenario: duration must be positive");
  }
  if (!(tank.length > 0.0 && tank.width > 0.0 && tank.depth > 0.0)) {
    throw std::invalid_argument("scenario: tank dimensions must be positive");
  }
  effective_plant().validate();
  controller_params.validate();
  disturbance.validate();
  mission.boundary.validate();
  if (!(mission.speed > 0.0)) {
    throw std::invalid_argument("scenario: mission speed must be positive");
  }
  if (!(mission.fsm.yaw_rate > 0.0)) {
    throw std::invalid_argument("scenario: yaw rate must be positive");
  }
  for (const auto& v : mission.boundary.vertices) {
    if (!tank.contains({v.x(), v.y(), mission.boundary.depth})) {
      throw std::invalid_argument(
          fmt::format("scenario: boundary vertex ({}, {}, {}) lies outside the tank", v.x(), v.y(),
                      mission.boundary.depth));
    }
  }
  if (!tank.contains(mission.start.position())) {
    throw std::invalid_argument("scenario: start pose lies outside the tank");
  }
  if (localization.enabled) {
    if (localization.map.empty()) {
      throw std::invalid_argument("scenario: localization enabled without tags");
    }
    if (!(localization.imu.rate_hz > 0.0) || !(localization.tag_rate_hz > 0.0)) {
      throw std::invalid_argument("scenario: sensor rates must be positive");
    }
    if (!(localization.measurement.sigma.array() > 0.0).all()) {
      throw std::invalid_argument("scenario: measurement sigma must be positive");
    }
  }
  if (!(safety_box > 0.0)) {
    throw std::invalid_argument("scenario: safety box must be positive");
  }
}

TagMap tank_wall_tags(const TankBox& tank, double depth) {
  struct Wall {
    Eigen::Vector2d from;
    Eigen::Vector2d to;
  };
  // Counterclockwise walls; the inward normal is the left normal of each.
  const std::array<Wall, 4> walls{{
      {{0.0, 0.0}, {tank.length, 0.0}},
      {{tank.length, 0.0}, {tank.length, tank.width}},
      {{tank.length, tank.width}, {0.0, tank.width}},
      {{0.0, tank.width}, {0.0, 0.0}},
  }};
  TagMap map;
  int id = 0;
  for (const Wall& wall : walls) {
    const Eigen::Vector2d d = (wall.to - wall.from).normalized();
    const Eigen::Vector3d inward(-d.y(), d.x(), 0.0);
    const Eigen::Vector3d down = Eigen::Vector3d::UnitZ();
    Eigen::Matrix3d rotation;
    rotation.col(0) = down.cross(inward);
    rotation.col(1) = down;
    rotation.col(2) = inward;
    for (const double fraction : {1.0 / 3.0, 2.0 / 3.0}) {
      const Eigen::Vector2d p = wall.from + fraction * (wall.to - wall.from);
      map.add({id++, RigidTransform(rotation, Eigen::Vector3d(p.x(), p.y(), depth))});
    }
  }
  return map;
}

Scenario standard_tank_scenario() {
  Scenario s;
  s.name = "tank";
  s.mission.boundary.vertices = {{0.0, 0.0}, {s.tank.length, 0.0}, {s.tank.length, s.tank.width}, {0.0, s.tank.width}};
  s.mission.boundary.depth = 0.35;
  s.mission.margin = 0.4;
  s.mission.speed = 0.1;
  s.mission.start = PlanarPose(0.45, 0.45, 0.35, -kPi / 2.0);

  LocalizationSpec& loc = s.localization;
  loc.map = tank_wall_tags(s.tank, s.mission.boundary.depth);
  loc.tag_noise = {0.01, 0.01};
  loc.imu.bias = {0.005, -0.004, 0.003, 0.002};
  loc.imu.sigma = {0.02, 0.02, 0.02, 0.01};
  loc.process.accel_sigma = {0.1, 0.1, 0.1, 0.1};
  loc.measurement.sigma = {0.015, 0.015, 0.015, 0.015};
  return s;
}

namespace {

using Keys = std::initializer_list<std::string_view>;

void check_keys(const YAML::Node& node, Keys allowed, std::string_view context) {
  if (!node.IsMap()) {
    throw std::runtime_error(fmt::format("scenario: '{}' must be a mapping", context));
  }
  for (const auto& entry : node) {
    const auto key = entry.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::runtime_error(fmt::format("scenario: unknown key '{}' in '{}'", key, context));
    }
  }
}

template <typename T>
void read(const YAML::Node& node, std::string_view key, T& out) {
  if (const YAML::Node child = node[std::string(key)]) {
    out = child.as<T>();
  }
}

template <int N>
void read_vector(const YAML::Node& node, std::string_view key, Eigen::Matrix<double, N, 1>& out) {
  const YAML::Node child = node[std::string(key)];
  if (!child) {
    return;
  }
  if (!child.IsSequence() || child.size() != static_cast<std::size_t>(N)) {
    throw std::runtime_error(fmt::format("scenario: '{}' must be a list of {} numbers", key, N));
  }
  for (int i = 0; i < N; ++i) {
    out(i) = child[static_cast<std::size_t>(i)].as<double>();
  }
}

void read_model(const YAML::Node& node, std::string_view context, ModelParams& p, bool allow_perturbation) {
  if (!node) {
    return;
  }
  if (allow_perturbation) {
    check_keys(node, {"mass", "coriolis", "linear_damping", "quadratic_damping", "buoyancy_minus_weight", "tau_d",
                      "perturbation"},
               context);
  } else {
    check_keys(node, {"mass", "coriolis", "linear_damping", "quadratic_damping", "buoyancy_minus_weight", "tau_d"},
               context);
  }
  read_vector<4>(node, "mass", p.mass);
  Eigen::Vector2d coriolis(p.coriolis_m11, p.coriolis_m22);
  read_vector<2>(node, "coriolis", coriolis);
  p.coriolis_m11 = coriolis(0);
  p.coriolis_m22 = coriolis(1);
  read_vector<4>(node, "linear_damping", p.linear_damping);
  read_vector<4>(node, "quadratic_damping", p.quadratic_damping);
  read(node, "buoyancy_minus_weight", p.buoyancy_minus_weight);
  read_vector<4>(node, "tau_d", p.tau_d);
}

void read_pid_axis(const YAML::Node& node, std::string_view key, PidAxisGains& g) {
  const YAML::Node child = node[std::string(key)];
  if (!child) {
    return;
  }
  check_keys(child, {"kp", "ki", "kd"}, key);
  read(child, "kp", g.kp);
  read(child, "ki", g.ki);
  read(child, "kd", g.kd);
}

}  // namespace

Scenario parse_scenario(const std::string& yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(fmt::format("scenario: YAML error: {}", e.what()));
  }
  if (!root || !root.IsMap()) {
    throw std::runtime_error("scenario: document must be a mapping");
  }

  try {
    check_keys(root, {"version", "name", "seed", "sim", "tank", "plant", "controller", "mission", "localization",
                      "disturbance"},
               "root");
    const int version = root["version"] ? root["version"].as<int>() : -1;
    if (version != kScenarioSchemaVersion) {
      throw std::runtime_error(
          fmt::format("scenario: unsupported schema version {} (expected {})", version, kScenarioSchemaVersion));
    }

    Scenario s = standard_tank_scenario();
    read(root, "name", s.name);
    read(root, "seed", s.seed);

    if (const YAML::Node sim = root["sim"]) {
      check_keys(sim, {"dt", "duration", "safety_box"}, "sim");
      read(sim, "dt", s.dt);
      read(sim, "duration", s.duration);
      read(sim, "safety_box", s.safety_box);
    }

    bool tank_changed = false;
    if (const YAML::Node tank = root["tank"]) {
      check_keys(tank, {"length", "width", "depth"}, "tank");
      read(tank, "length", s.tank.length);
      read(tank, "width", s.tank.width);
      read(tank, "depth", s.tank.depth);
      tank_changed = true;
    }

    if (const YAML::Node plant = root["plant"]) {
      read_model(plant, "plant", s.plant, true);
      if (const YAML::Node pert = plant["perturbation"]) {
        check_keys(pert, {"mass_scale", "damping_scale", "coriolis_scale"}, "plant.perturbation");
        read(pert, "mass_scale", s.plant_perturbation.mass_scale);
        read(pert, "damping_scale", s.plant_perturbation.damping_scale);
        read(pert, "coriolis_scale", s.plant_perturbation.coriolis_scale);
      }
    }

    if (const YAML::Node ctrl = root["controller"]) {
      check_keys(ctrl, {"kind", "nominal", "nfc", "pid", "saturation"}, "controller");
      if (ctrl["kind"]) {
        s.controller = controller_kind_from_string(ctrl["kind"].as<std::string>());
      }
      read_model(ctrl["nominal"], "controller.nominal", s.controller_params, false);
      if (const YAML::Node nfc = ctrl["nfc"]) {
        check_keys(nfc, {"k1", "k2"}, "controller.nfc");
        read_vector<4>(nfc, "k1", s.nfc_gains.k1);
        read_vector<4>(nfc, "k2", s.nfc_gains.k2);
      }
      if (const YAML::Node pid = ctrl["pid"]) {
        check_keys(pid, {"lateral", "throttle", "depth", "yaw", "throttle_feedforward"}, "controller.pid");
        read_pid_axis(pid, "lateral", s.pid_gains.lateral);
        read_pid_axis(pid, "throttle", s.pid_gains.throttle);
        read_pid_axis(pid, "depth", s.pid_gains.depth);
        read_pid_axis(pid, "yaw", s.pid_gains.yaw);
        read(pid, "throttle_feedforward", s.pid_gains.throttle_feedforward);
      }
      if (const YAML::Node sat = ctrl["saturation"]) {
        check_keys(sat, {"force", "torque"}, "controller.saturation");
        read(sat, "force", s.saturation.force);
        read(sat, "torque", s.saturation.torque);
      }
    }

    if (const YAML::Node mission = root["mission"]) {
      check_keys(mission, {"boundary", "depth", "margin", "speed", "yaw_rate", "accept_radius", "accept_yaw",
                           "turn_tolerance", "smooth_reference", "ramp_time", "start"},
                 "mission");
      if (const YAML::Node boundary = mission["boundary"]) {
        s.mission.boundary.vertices.clear();
        for (const auto& v : boundary) {
          if (!v.IsSequence() || v.size() != 2) {
            throw std::runtime_error("scenario: boundary vertices must be [x, y] pairs");
          }
          s.mission.boundary.vertices.emplace_back(v[0].as<double>(), v[1].as<double>());
        }
      }
      read(mission, "depth", s.mission.boundary.depth);
      read(mission, "margin", s.mission.margin);
      read(mission, "speed", s.mission.speed);
      read(mission, "yaw_rate", s.mission.fsm.yaw_rate);
      read(mission, "accept_radius", s.mission.fsm.accept_radius);
      read(mission, "accept_yaw", s.mission.fsm.accept_yaw);
      read(mission, "turn_tolerance", s.mission.fsm.turn_tolerance);
      read(mission, "smooth_reference", s.mission.fsm.smooth_reference);
      read(mission, "ramp_time", s.mission.fsm.ramp_time);
      Vector4 start = s.mission.start.vector();
      read_vector<4>(mission, "start", start);
      s.mission.start = PlanarPose::from_vector(start);
    }

    LocalizationSpec& loc = s.localization;
    if (tank_changed) {
      loc.map = tank_wall_tags(s.tank, s.mission.boundary.depth);
    }
    if (const YAML::Node node = root["localization"]) {
      check_keys(node, {"enabled", "tag_map", "tag_layout", "camera", "tag_noise", "tag_rate_hz", "imu", "ekf"},
                 "localization");
      read(node, "enabled", loc.enabled);
      if (node["tag_map"] && node["tag_layout"]) {
        throw std::runtime_error("scenario: give either localization.tag_map or localization.tag_layout");
      }
      if (const YAML::Node map_path = node["tag_map"]) {
        std::filesystem::path path = map_path.as<std::string>();
        if (path.is_relative()) {
          path = base_dir / path;
        }
        loc.map = load_tag_map(path);
      }
      if (const YAML::Node layout = node["tag_layout"]) {
        if (layout.as<std::string>() != "tank_walls") {
          throw std::runtime_error("scenario: unknown tag_layout '" + layout.as<std::string>() + "'");
        }
        loc.map = tank_wall_tags(s.tank, s.mission.boundary.depth);
      }
      if (const YAML::Node cam = node["camera"]) {
        check_keys(cam, {"offset", "fov_half_angle", "range"}, "localization.camera");
        read_vector<3>(cam, "offset", loc.camera_offset);
        read(cam, "fov_half_angle", loc.fov_half_angle);
        read(cam, "range", loc.range);
      }
      if (const YAML::Node noise = node["tag_noise"]) {
        check_keys(noise, {"sigma_translation", "sigma_rotation"}, "localization.tag_noise");
        read(noise, "sigma_translation", loc.tag_noise.sigma_translation);
        read(noise, "sigma_rotation", loc.tag_noise.sigma_rotation);
      }
      read(node, "tag_rate_hz", loc.tag_rate_hz);
      if (const YAML::Node imu = node["imu"]) {
        check_keys(imu, {"rate_hz", "bias", "sigma"}, "localization.imu");
        read(imu, "rate_hz", loc.imu.rate_hz);
        read_vector<4>(imu, "bias", loc.imu.bias);
        read_vector<4>(imu, "sigma", loc.imu.sigma);
      }
      if (const YAML::Node ekf = node["ekf"]) {
        check_keys(ekf, {"process_accel_sigma", "measurement_sigma", "initial_sigma"}, "localization.ekf");
        read_vector<4>(ekf, "process_accel_sigma", loc.process.accel_sigma);
        read_vector<4>(ekf, "measurement_sigma", loc.measurement.sigma);
        read_vector<8>(ekf, "initial_sigma", loc.initial_sigma);
      }
    }

    if (const YAML::Node dist = root["disturbance"]) {
      check_keys(dist, {"constant", "amplitude", "frequency_hz", "phase", "onset"}, "disturbance");
      read_vector<4>(dist, "constant", s.disturbance.constant);
      read_vector<4>(dist, "amplitude", s.disturbance.amplitude);
      read(dist, "frequency_hz", s.disturbance.frequency_hz);
      read(dist, "phase", s.disturbance.phase);
      read(dist, "onset", s.disturbance.onset);
    }

    s.validate();
    return s;
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(fmt::format("scenario: {}", e.what()));
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.parent_path());
}

}  // namespace rovnav
