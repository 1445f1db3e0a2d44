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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <vector>

#include "rovnav/scenario.hpp"

namespace rovnav {

struct EpisodeSample {
  double t = 0.0;
  PlanarPose truth;
  PlanarPose estimate;
  PlanarPose reference;
  PlanarPose tag_only;  // most recent pose_from_tag measurement
  Vector4 wrench = Vector4::Zero();  // applied body-frame control wrench
  MissionState mission;
  bool saturated = false;
};

struct EpisodeResult {
  ControllerKind controller = ControllerKind::nfc;
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::vector<EpisodeSample> samples;

  /// Truth vs reference over the inspection ticks (follow_edge and
  /// corner_turn; every tick when there are none).
  Vector4 mae = Vector4::Zero();
  /// Estimate vs reference over the same ticks.
  Vector4 mae_estimate = Vector4::Zero();
  double saturation_fraction = 0.0;
  bool completed = false;
  std::size_t tag_updates = 0;
  std::size_t rejected_updates = 0;

  std::vector<PlanarPose> truth_series() const;
  std::vector<PlanarPose> estimate_series() const;
  std::vector<PlanarPose> reference_series() const;
  std::vector<PlanarPose> tag_only_series() const;
};

/// Raised when the true vehicle leaves the safety box around the tank.
class EpisodeDiverged : public std::runtime_error {
 public:
  EpisodeDiverged(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

std::unique_ptr<Controller> make_controller(const Scenario& s);

/// Closed loop: sense (tags + IMU -> EKF), plan (advance), control, actuate
/// (saturate, disturbance), step. Runs until the mission is done or the
/// duration elapses. Deterministic for a given scenario and seed.
EpisodeResult run_episode(const Scenario& s);

/// Fixed columns: t, truth x4, estimate x4, reference x4, wrench x4, mode,
/// saturated. Numbers use 9 significant digits.
void write_episode_csv(std::ostream& os, const EpisodeResult& result);

/// Summary record as JSON (MAE, flags, counters).
void write_episode_summary(std::ostream& os, const EpisodeResult& result);

struct ComparisonReport {
  std::array<EpisodeResult, 2> results;
  /// Per axis (x, y, z, psi): index into `results` of the lower MAE, or -1 on a tie.
  std::array<int, 4> winner{};
};

/// Runs the scenario once per controller kind with identical seed and
/// disturbance; the two episodes execute concurrently.
ComparisonReport compare_controllers(const Scenario& base,
                                     std::array<ControllerKind, 2> kinds = {ControllerKind::nfc,
                                                                            ControllerKind::pid});

/// Human readable MAE table. The y axis is listed separately as the
/// constant-speed direction.
void write_comparison(std::ostream& os, const ComparisonReport& report);

}  // namespace rovnav
