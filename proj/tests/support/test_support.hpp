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

// Shared helpers for the unit and acceptance suites.

#pragma once

#include <random>

#include <Eigen/Geometry>

#include "rovnav/episode.hpp"
#include "rovnav/metrics.hpp"

namespace rovnav::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector4 random_vector4(std::mt19937_64& rng, double scale) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale),
          uniform(rng, -scale, scale)};
}

inline RigidTransform random_transform(std::mt19937_64& rng, double translation_scale = 2.0) {
  Eigen::Vector3d axis(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
  if (axis.norm() < 1e-6) {
    axis = Eigen::Vector3d::UnitZ();
  }
  const Eigen::Matrix3d rotation = Eigen::AngleAxisd(uniform(rng, -kPi, kPi), axis.normalized()).toRotationMatrix();
  const Eigen::Vector3d translation(uniform(rng, -translation_scale, translation_scale),
                                    uniform(rng, -translation_scale, translation_scale),
                                    uniform(rng, -translation_scale, translation_scale));
  return RigidTransform(orthonormalize(rotation), translation);
}

inline VehicleState random_state(std::mt19937_64& rng, double speed = 0.5) {
  VehicleState s;
  s.eta = PlanarPose(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, 0, 1), uniform(rng, -kPi, kPi));
  s.nu = BodyVelocity::from_vector(random_vector4(rng, speed));
  return s;
}

/// Nominal parameters with every term switched on, so oracles exercise
/// quadratic damping, buoyancy and disturbance paths too.
inline ModelParams rich_params() {
  ModelParams p = ModelParams::bluerov2_nominal();
  p.quadratic_damping = {18.0, 21.0, 36.0, 0.5};
  p.buoyancy_minus_weight = 1.5;
  p.tau_d = {0.4, -0.3, 0.2, 0.05};
  return p;
}

}  // namespace rovnav::testing
