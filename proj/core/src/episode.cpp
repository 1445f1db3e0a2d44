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

#include "rovnav/episode.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include <fmt/format.h>

#include "rovnav/metrics.hpp"

namespace rovnav {

namespace {

// Independent RNG streams derived from the scenario seed.
enum class Stream : std::uint64_t { tags = 1, imu = 2 };

std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::size_t ticks_per_period(double rate_hz, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / (rate_hz * dt))));
}

bool is_inspection(MissionMode mode) {
  return mode == MissionMode::follow_edge || mode == MissionMode::corner_turn;
}

template <typename Member>
std::vector<PlanarPose> series(const std::vector<EpisodeSample>& samples, Member member) {
  std::vector<PlanarPose> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back(s.*member);
  }
  return out;
}

}  // namespace

std::vector<PlanarPose> EpisodeResult::truth_series() const {
  return series(samples, &EpisodeSample::truth);
}
std::vector<PlanarPose> EpisodeResult::estimate_series() const {
  return series(samples, &EpisodeSample::estimate);
}
std::vector<PlanarPose> EpisodeResult::reference_series() const {
  return series(samples, &EpisodeSample::reference);
}
std::vector<PlanarPose> EpisodeResult::tag_only_series() const {
  return series(samples, &EpisodeSample::tag_only);
}

std::unique_ptr<Controller> make_controller(const Scenario& s) {
  switch (s.controller) {
    case ControllerKind::nfc:
      return std::make_unique<NfcController>(s.controller_params, s.nfc_gains, s.saturation);
    case ControllerKind::pid:
      return std::make_unique<PidController>(s.pid_gains, s.saturation);
  }
  throw std::invalid_argument("make_controller: unknown controller kind");
}

EpisodeResult run_episode(const Scenario& s) {
  s.validate();
  const ModelParams plant = s.effective_plant();
  const InspectionPlan plan =
      build_plan(s.mission.boundary, s.mission.margin, s.mission.speed,
                 Eigen::Vector2d(s.mission.start.x, s.mission.start.y));
  const std::unique_ptr<Controller> controller = make_controller(s);
  const LocalizationSpec& loc = s.localization;
  const RigidTransform camera_to_rig = forward_camera_to_rig(loc.camera_offset);

  std::mt19937_64 tag_rng = make_stream(s.seed, Stream::tags);
  std::mt19937_64 imu_rng = make_stream(s.seed, Stream::imu);
  std::normal_distribution<double> standard(0.0, 1.0);

  VehicleState truth{s.mission.start, BodyVelocity{}};
  FusedEstimate estimate{truth.eta, truth.nu, Matrix8(loc.initial_sigma.cwiseAbs2().asDiagonal())};
  PlanarPose tag_only = truth.eta;
  MissionState mission;

  const auto total_ticks = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(s.duration / s.dt)));
  const std::size_t imu_period = ticks_per_period(loc.imu.rate_hz, s.dt);
  const std::size_t tag_period = ticks_per_period(loc.tag_rate_hz, s.dt);
  BodyVelocity nu_at_last_imu = truth.nu;
  std::size_t last_imu_tick = 0;

  EpisodeResult result;
  result.controller = s.controller;
  result.seed = s.seed;
  result.dt = s.dt;
  result.samples.reserve(total_ticks);
  const Eigen::Vector3d tank_center = s.tank.center();

  for (std::size_t k = 0; k < total_ticks; ++k) {
    const double t = static_cast<double>(k) * s.dt;

    // Sense.
    VehicleState sensed = truth;
    if (loc.enabled) {
      if (k > 0 && k % imu_period == 0) {
        const double interval = static_cast<double>(k - last_imu_tick) * s.dt;
        Vector4 accel = (truth.nu.vector() - nu_at_last_imu.vector()) / interval + loc.imu.bias;
        for (int i = 0; i < 4; ++i) {
          accel(i) += loc.imu.sigma(i) * standard(imu_rng);
        }
        estimate = ekf_predict(estimate, accel, interval, loc.process);
        nu_at_last_imu = truth.nu;
        last_imu_tick = k;
      }
      if (k % tag_period == 0) {
        const auto observations = observe_tags(from_planar(truth.eta), loc.map, camera_to_rig, loc.tag_noise,
                                               loc.fov_half_angle, loc.range, t, tag_rng);
        for (const TagObservation& obs : observations) {
          const PlanarPose measured = to_planar(pose_from_tag(obs, loc.map, camera_to_rig));
          tag_only = measured;
          const UpdateResult update = ekf_update(estimate, measured, loc.measurement);
          estimate = update.estimate;
          ++result.tag_updates;
          if (!update.accepted) {
            ++result.rejected_updates;
          }
        }
      }
      sensed = {estimate.eta_hat, estimate.nu_hat};
    }

    // Plan.
    const AdvanceResult planned = advance(mission, plan, s.mission.fsm, sensed.eta, s.dt);
    mission = planned.state;

    // Control.
    const ControlOutput control = controller->update(sensed, planned.reference, s.dt);

    EpisodeSample sample;
    sample.t = t;
    sample.truth = truth.eta;
    sample.estimate = sensed.eta;
    sample.reference = planned.reference.eta_d;
    sample.tag_only = tag_only;
    sample.wrench = control.applied.values;
    sample.mission = mission;
    sample.saturated = control.saturated;
    result.samples.push_back(sample);

    if (mission.mode == MissionMode::done) {
      result.completed = true;
      break;
    }

    // Actuate and integrate.
    ModelParams plant_now = plant;
    plant_now.tau_d = plant.tau_d + s.disturbance.at(t);
    truth = step(truth, plant_now, control.applied, s.dt);

    if ((truth.eta.position() - tank_center).cwiseAbs().maxCoeff() > s.safety_box) {
      throw EpisodeDiverged(
          fmt::format("episode diverged at t = {:.3f} s: vehicle left the {} m safety box", t + s.dt, s.safety_box),
          t + s.dt);
    }
  }

  std::vector<PlanarPose> truth_part;
  std::vector<PlanarPose> estimate_part;
  std::vector<PlanarPose> reference_part;
  std::size_t saturated = 0;
  for (const auto& sample : result.samples) {
    saturated += sample.saturated ? 1 : 0;
    if (is_inspection(sample.mission.mode)) {
      truth_part.push_back(sample.truth);
      estimate_part.push_back(sample.estimate);
      reference_part.push_back(sample.reference);
    }
  }
  if (truth_part.empty()) {
    truth_part = result.truth_series();
    estimate_part = result.estimate_series();
    reference_part = result.reference_series();
  }
  result.mae = mae(truth_part, reference_part);
  result.mae_estimate = mae(estimate_part, reference_part);
  result.saturation_fraction = static_cast<double>(saturated) / static_cast<double>(result.samples.size());
  return result;
}

ComparisonReport compare_controllers(const Scenario& base, std::array<ControllerKind, 2> kinds) {
  auto launch = [&base](ControllerKind kind) {
    return std::async(std::launch::async, [scenario = base, kind]() mutable {
      scenario.controller = kind;
      return run_episode(scenario);
    });
  };
  auto first = launch(kinds[0]);
  auto second = launch(kinds[1]);

  ComparisonReport report;
  report.results[0] = first.get();
  report.results[1] = second.get();
  for (int axis = 0; axis < 4; ++axis) {
    const double a = report.results[0].mae(axis);
    const double b = report.results[1].mae(axis);
    report.winner[static_cast<std::size_t>(axis)] = a < b ? 0 : (b < a ? 1 : -1);
  }
  return report;
}

}  // namespace rovnav
