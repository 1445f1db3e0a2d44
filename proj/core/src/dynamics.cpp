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

#include "rovnav/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace rovnav {

ModelParams ModelParams::bluerov2_nominal() {
  ModelParams p;
  p.mass = {25.2, 25.2, 25.2, 0.402};
  p.coriolis_m11 = 12.5;
  p.coriolis_m22 = 12.5;
  p.linear_damping = {5.5, 7.0, 8.0, 1.0};
  p.quadratic_damping = Vector4::Zero();
  p.buoyancy_minus_weight = 0.0;
  p.tau_d = Vector4::Zero();
  return p;
}

void ModelParams::validate() const {
  if (!(mass.array() > 0.0).all() || !mass.allFinite()) {
    throw std::invalid_argument("ModelParams: mass entries must be positive");
  }
  if (!(linear_damping.array() >= 0.0).all() || !(quadratic_damping.array() >= 0.0).all()) {
    throw std::invalid_argument("ModelParams: damping coefficients must be non-negative");
  }
  if (!linear_damping.allFinite() || !quadratic_damping.allFinite() || !tau_d.allFinite() ||
      !std::isfinite(coriolis_m11) || !std::isfinite(coriolis_m22) || !std::isfinite(buoyancy_minus_weight)) {
    throw std::invalid_argument("ModelParams: non-finite coefficient");
  }
}

SaturationLimits SaturationLimits::unlimited() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, inf};
}

SaturatedWrench saturate(const ControlWrench& wrench, const SaturationLimits& limits) {
  if (wrench.frame != Frame::body) {
    throw std::invalid_argument("saturate: wrench must be expressed in the body frame");
  }
  const Vector4 bounds = limits.bounds();
  SaturatedWrench out{wrench, false};
  for (int i = 0; i < 4; ++i) {
    const double clamped = std::clamp(wrench.values(i), -bounds(i), bounds(i));
    if (clamped != wrench.values(i)) {
      out.saturated = true;
    }
    out.wrench.values(i) = clamped;
  }
  return out;
}

ControlWrench to_body(const ControlWrench& wrench, double psi) {
  if (wrench.frame == Frame::body) {
    return wrench;
  }
  return {transform_J(psi).transpose() * wrench.values, Frame::body};
}

ControlWrench to_world(const ControlWrench& wrench, double psi) {
  if (wrench.frame == Frame::world) {
    return wrench;
  }
  return {transform_J(psi) * wrench.values, Frame::world};
}

Matrix4 mass_matrix(const ModelParams& p) {
  return p.mass.asDiagonal();
}

Matrix4 coriolis_matrix(const ModelParams& p, const BodyVelocity& nu) {
  Matrix4 c = Matrix4::Zero();
  c(0, 3) = -p.coriolis_m22 * nu.v;
  c(1, 3) = p.coriolis_m11 * nu.u;
  c(3, 0) = p.coriolis_m22 * nu.v;
  c(3, 1) = -p.coriolis_m11 * nu.u;
  return c;
}

Matrix4 damping_matrix(const ModelParams& p, const BodyVelocity& nu) {
  const Vector4 speed = nu.vector().cwiseAbs();
  return (p.linear_damping + p.quadratic_damping.cwiseProduct(speed)).asDiagonal();
}

Vector4 hydrostatic_vector(const ModelParams& p) {
  return {0.0, 0.0, p.buoyancy_minus_weight, 0.0};
}

Matrix4 transform_J(double psi) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  Matrix4 j = Matrix4::Identity();
  j(0, 0) = c;
  j(0, 1) = -s;
  j(1, 0) = s;
  j(1, 1) = c;
  return j;
}

Matrix4 transform_J_dot(double psi, double r) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  Matrix4 j = Matrix4::Zero();
  j(0, 0) = -s * r;
  j(0, 1) = -c * r;
  j(1, 0) = c * r;
  j(1, 1) = -s * r;
  return j;
}

namespace {

// nu_dot for a body-frame wrench, skipping the input checks.
Vector4 body_accel_unchecked(const BodyVelocity& nu, const ModelParams& p, const Vector4& tau) {
  const Vector4 n = nu.vector();
  const Vector4 rhs =
      tau - coriolis_matrix(p, nu) * n - damping_matrix(p, nu) * n - hydrostatic_vector(p) - p.tau_d;
  return rhs.cwiseQuotient(p.mass);
}

bool state_finite(const VehicleState& s) {
  return s.eta.vector().allFinite() && s.nu.vector().allFinite();
}

}  // namespace

Vector4 body_accel(const VehicleState& state, const ModelParams& p, const ControlWrench& tau_body) {
  if (tau_body.frame != Frame::body) {
    throw std::invalid_argument("body_accel: wrench must be expressed in the body frame");
  }
  if (!state_finite(state) || !tau_body.values.allFinite()) {
    throw std::invalid_argument("body_accel: non-finite input");
  }
  return body_accel_unchecked(state.nu, p, tau_body.values);
}

WorldDynamicsTerms world_dynamics_terms(const VehicleState& state, const ModelParams& p) {
  // J is orthogonal, so J^-1 = J^T and J^-T = J.
  const Matrix4 j = transform_J(state.eta.psi);
  const Matrix4 jt = j.transpose();
  const Matrix4 j_dot = transform_J_dot(state.eta.psi, state.nu.r);
  const Matrix4 m = mass_matrix(p);

  WorldDynamicsTerms terms;
  terms.M_eta = j * m * jt;
  terms.C_eta = j * (coriolis_matrix(p, state.nu) - m * jt * j_dot) * jt;
  terms.D_eta = j * damping_matrix(p, state.nu) * jt;
  terms.g_eta = j * hydrostatic_vector(p);
  terms.tau_e = j * p.tau_d;
  return terms;
}

Vector4 world_accel(const VehicleState& state, const ModelParams& p, const Vector4& tau_world) {
  const WorldDynamicsTerms t = world_dynamics_terms(state, p);
  const Vector4 eta_dot = world_velocity(state);
  const Vector4 rhs = tau_world - (t.C_eta + t.D_eta) * eta_dot - t.g_eta - t.tau_e;
  return t.M_eta.partialPivLu().solve(rhs);
}

Vector4 world_velocity(const VehicleState& state) {
  return transform_J(state.eta.psi) * state.nu.vector();
}

double kinetic_energy(const BodyVelocity& nu, const ModelParams& p) {
  const Vector4 n = nu.vector();
  return 0.5 * n.dot(p.mass.cwiseProduct(n));
}

VehicleState step(const VehicleState& state, const ModelParams& p, const ControlWrench& tau, double dt) {
  if (!(dt > 0.0) || dt > kMaxStepSeconds) {
    throw std::invalid_argument("step: dt must lie in (0, 0.05] s");
  }
  if (!state_finite(state) || !tau.values.allFinite()) {
    throw IntegrationDiverged("step: non-finite state or wrench", state);
  }

  // y = [eta; nu] with psi left unwrapped inside the step.
  auto derivative = [&](const Vector8& y) {
    const double psi = y(3);
    const BodyVelocity nu = BodyVelocity::from_vector(y.tail<4>());
    const Vector4 tau_body =
        tau.frame == Frame::body ? tau.values : Vector4(transform_J(psi).transpose() * tau.values);
    Vector8 dy;
    dy.head<4>() = transform_J(psi) * nu.vector();
    dy.tail<4>() = body_accel_unchecked(nu, p, tau_body);
    return dy;
  };

  Vector8 y;
  y.head<4>() = state.eta.vector();
  y.tail<4>() = state.nu.vector();

  const Vector8 k1 = derivative(y);
  const Vector8 k2 = derivative(y + 0.5 * dt * k1);
  const Vector8 k3 = derivative(y + 0.5 * dt * k2);
  const Vector8 k4 = derivative(y + dt * k3);
  const Vector8 next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  if (!next.allFinite()) {
    throw IntegrationDiverged("step: integration produced a non-finite state", state);
  }
  return {PlanarPose::from_vector(next.head<4>()), BodyVelocity::from_vector(next.tail<4>())};
}

}  // namespace rovnav
