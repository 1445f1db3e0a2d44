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

#include <stdexcept>

#include <Eigen/Core>

#include "rovnav/se3.hpp"

namespace rovnav {

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;
using Vector8 = Eigen::Matrix<double, 8, 1>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Body-frame velocity: surge, sway, heave (m/s) and yaw rate (rad/s).
struct BodyVelocity {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double r = 0.0;

  Vector4 vector() const { return {u, v, w, r}; }
  static BodyVelocity from_vector(const Vector4& nu) { return {nu(0), nu(1), nu(2), nu(3)}; }
};

struct VehicleState {
  PlanarPose eta;   // world frame
  BodyVelocity nu;  // body frame
};

/// 4-DoF model coefficients. Damping coefficients are stored as positive
/// magnitudes, i.e. d_linear = -[Xu, Yv, Zw, Nr].
struct ModelParams {
  Vector4 mass = Vector4::Ones();               // m11..m44 (kg, kg m^2)
  double coriolis_m11 = 0.0;                    // kg, enters C(nu) only
  double coriolis_m22 = 0.0;                    // kg, enters C(nu) only
  Vector4 linear_damping = Vector4::Zero();      // d_l1..d_l4
  Vector4 quadratic_damping = Vector4::Zero();   // d_n1..d_n4
  double buoyancy_minus_weight = 0.0;           // N, along body z
  Vector4 tau_d = Vector4::Zero();               // body-frame disturbance

  /// BlueROV2 nominal set used by the NFC controller.
  static ModelParams bluerov2_nominal();

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

enum class Frame { body, world };

struct ControlWrench {
  Vector4 values = Vector4::Zero();  // fx, fy, fz (N), mz (N m)
  Frame frame = Frame::body;
};

/// Per-component actuator bounds applied to body-frame wrenches.
struct SaturationLimits {
  double force = 40.0;   // N
  double torque = 10.0;  // N m

  static SaturationLimits unlimited();
  Vector4 bounds() const { return {force, force, force, torque}; }
};

struct SaturatedWrench {
  ControlWrench wrench;
  bool saturated = false;
};

/// Clamps a body-frame wrench; world-frame input is rejected.
SaturatedWrench saturate(const ControlWrench& wrench, const SaturationLimits& limits);

ControlWrench to_body(const ControlWrench& wrench, double psi);
ControlWrench to_world(const ControlWrench& wrench, double psi);

Matrix4 mass_matrix(const ModelParams& p);
Matrix4 coriolis_matrix(const ModelParams& p, const BodyVelocity& nu);
Matrix4 damping_matrix(const ModelParams& p, const BodyVelocity& nu);
Vector4 hydrostatic_vector(const ModelParams& p);

/// Body-to-world velocity transform J(psi).
Matrix4 transform_J(double psi);
/// dJ/dt = dJ/dpsi * r.
Matrix4 transform_J_dot(double psi, double r);

/// nu_dot = M^-1 (tau - C(nu) nu - D(nu) nu - g - tau_d). Requires a
/// body-frame wrench; throws std::invalid_argument on world frame or
/// non-finite input.
Vector4 body_accel(const VehicleState& state, const ModelParams& p, const ControlWrench& tau_body);

struct WorldDynamicsTerms {
  Matrix4 M_eta;
  Matrix4 C_eta;
  Matrix4 D_eta;
  Vector4 g_eta;
  Vector4 tau_e;
};

/// World-frame model M_eta eta_ddot + (C_eta + D_eta) eta_dot + g_eta + tau_e = tau_eta.
WorldDynamicsTerms world_dynamics_terms(const VehicleState& state, const ModelParams& p);

/// eta_ddot from the world-frame model for a world-frame wrench.
Vector4 world_accel(const VehicleState& state, const ModelParams& p, const Vector4& tau_world);

/// World-frame velocity J(psi) nu.
Vector4 world_velocity(const VehicleState& state);

double kinetic_energy(const BodyVelocity& nu, const ModelParams& p);

class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged(const char* what, const VehicleState& last_valid)
      : std::runtime_error(what), last_valid_(last_valid) {}
  const VehicleState& last_valid() const { return last_valid_; }

 private:
  VehicleState last_valid_;
};

inline constexpr double kMaxStepSeconds = 0.05;

/// One classical RK4 step of eta_dot = J(psi) nu, nu_dot = body_accel.
///
/// A body-frame wrench is held constant in the body frame over the step; a
/// world-frame wrench is held constant in the world frame and rotated into
/// the body at every stage. psi is wrapped after the step. Requires
/// 0 < dt <= kMaxStepSeconds.
VehicleState step(const VehicleState& state, const ModelParams& p, const ControlWrench& tau, double dt);

}  // namespace rovnav
