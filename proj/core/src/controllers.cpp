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

#include "rovnav/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

namespace rovnav {

TrackingError tracking_error(const VehicleState& state, const ReferencePoint& ref) {
  TrackingError err;
  err.eps = state.eta.vector() - ref.eta_d.vector();
  err.eps(3) = wrap_angle(state.eta.psi - ref.eta_d.psi);
  err.eps_dot = world_velocity(state) - ref.eta_d_dot;
  return err;
}

ErrorSystem error_system_matrices(const VehicleState& state, const ModelParams& p) {
  const WorldDynamicsTerms t = world_dynamics_terms(state, p);
  ErrorSystem sys;
  sys.N = -t.M_eta.partialPivLu().solve(t.C_eta + t.D_eta);
  sys.A.setZero();
  sys.A.topRightCorner<4, 4>().setIdentity();
  sys.A.bottomRightCorner<4, 4>() = sys.N;
  sys.B.setZero();
  sys.B.bottomRows<4>().setIdentity();
  return sys;
}

NfcGains NfcGains::bluerov2() {
  return {{-300.0, -350.0, -1500.0, -250.0}, {-100.0, -70.0, -300.0, -60.0}};
}

Eigen::Matrix<double, 4, 8> NfcGains::feedback() const {
  Eigen::Matrix<double, 4, 8> k = Eigen::Matrix<double, 4, 8>::Zero();
  k.leftCols<4>() = k1.asDiagonal();
  k.rightCols<4>() = k2.asDiagonal();
  return k;
}

Matrix8 closed_loop_matrix(const NfcGains& gains, const VehicleState& state, const ModelParams& p) {
  const ErrorSystem sys = error_system_matrices(state, p);
  return sys.A + sys.B * gains.feedback();
}

StabilityReport verify_stability(const NfcGains& gains, const ModelParams& p, const BodyVelocity& nu) {
  const VehicleState operating_point{PlanarPose{}, nu};
  const Matrix8 a1 = closed_loop_matrix(gains, operating_point, p);
  Eigen::EigenSolver<Matrix8> solver(a1, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("verify_stability: eigenvalue iteration did not converge");
  }
  StabilityReport report;
  std::vector<std::complex<double>> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::copy(values.begin(), values.end(), report.eigenvalues.begin());
  report.spectral_abscissa = values.back().real();
  report.stable = report.spectral_abscissa < 0.0;
  return report;
}

SampledStabilityReport verify_sampled_stability(const NfcGains& gains, const ModelParams& p,
                                                const BodyVelocity& nu, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("verify_sampled_stability: dt must be positive");
  }
  const VehicleState operating_point{PlanarPose{}, nu};
  const ErrorSystem sys = error_system_matrices(operating_point, p);

  // Zero-order-hold discretization via the augmented exponential
  // exp([[A, B], [0, 0]] dt) = [[Phi, Gamma], [0, I]].
  Eigen::Matrix<double, 12, 12> augmented = Eigen::Matrix<double, 12, 12>::Zero();
  augmented.topLeftCorner<8, 8>() = sys.A * dt;
  augmented.topRightCorner<8, 4>() = sys.B * dt;
  const Eigen::Matrix<double, 12, 12> exp_aug = augmented.exp();
  const Matrix8 phi = exp_aug.topLeftCorner<8, 8>();
  const Eigen::Matrix<double, 8, 4> gamma = exp_aug.topRightCorner<8, 4>();
  const Matrix8 closed = phi + gamma * gains.feedback();

  Eigen::EigenSolver<Matrix8> solver(closed, false);
  SampledStabilityReport report;
  report.spectral_radius = solver.eigenvalues().cwiseAbs().maxCoeff();
  report.stable = report.spectral_radius < 1.0;
  return report;
}

ControlWrench nfc_world_wrench(const VehicleState& state, const ReferencePoint& ref, const ModelParams& p,
                               const NfcGains& gains) {
  const WorldDynamicsTerms t = world_dynamics_terms(state, p);
  const Vector8 e = tracking_error(state, ref).stacked();
  const Vector4 tau = t.M_eta * (gains.feedback() * e + ref.eta_d_ddot) + (t.C_eta + t.D_eta) * ref.eta_d_dot +
                      t.g_eta + t.tau_e;
  return {tau, Frame::world};
}

ControlOutput nfc_wrench(const VehicleState& state, const ReferencePoint& ref, const ModelParams& p,
                         const NfcGains& gains, const SaturationLimits& limits) {
  ControlOutput out;
  out.commanded = nfc_world_wrench(state, ref, p, gains);
  const SaturatedWrench sat = saturate(to_body(out.commanded, state.eta.psi), limits);
  out.applied = sat.wrench;
  out.saturated = sat.saturated;
  return out;
}

PidGains PidGains::bluerov2() {
  PidGains g;
  g.lateral = {400.0, 0.0, 50.0};
  g.yaw = {150.0, 0.0, 15.0};
  g.depth = {500.0, 0.0, 50.0};
  g.throttle = {350.0, 0.0, 15.0};
  g.throttle_feedforward = 7.0;
  return g;
}

ControlOutput pid_wrench(const VehicleState& state, const ReferencePoint& ref, const PidGains& gains, double dt,
                         PidMemory& memory, const SaturationLimits& limits) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("pid_wrench: dt must be positive");
  }
  const TrackingError err = tracking_error(state, ref);
  const Matrix4 jt = transform_J(state.eta.psi).transpose();

  // Signal s = -eps with the horizontal part resolved in the body frame.
  const Vector4 signal = -(jt * err.eps);
  const Vector4 desired_body_velocity = jt * ref.eta_d_dot;

  if (!memory.initialized) {
    memory.previous_signal = signal;
    memory.filtered_derivative.setZero();
    memory.initialized = true;
  }

  const double tf = kPidDerivativeFilterPeriods * dt;
  const double alpha = tf / (tf + dt);
  Vector4 raw_derivative = (signal - memory.previous_signal) / dt;
  raw_derivative(3) = wrap_angle(signal(3) - memory.previous_signal(3)) / dt;
  memory.filtered_derivative = alpha * memory.filtered_derivative + (1.0 - alpha) * raw_derivative;
  memory.previous_signal = signal;

  Vector4 feedforward = Vector4::Zero();
  feedforward(1) = gains.throttle_feedforward * desired_body_velocity(1);

  const auto axes = gains.by_component();
  const Vector4 bounds = limits.bounds();
  Vector4 command;
  for (int i = 0; i < 4; ++i) {
    const PidAxisGains& g = axes[static_cast<std::size_t>(i)];
    const double base = g.kp * signal(i) + g.kd * memory.filtered_derivative(i) + feedforward(i);
    double integral = memory.integral(i);
    if (g.ki != 0.0) {
      const double candidate = integral + signal(i) * dt;
      const double u = base + g.ki * candidate;
      const bool winding = std::abs(u) > bounds(i) && std::signbit(u) == std::signbit(signal(i));
      if (!winding) {
        integral = candidate;
      }
    }
    memory.integral(i) = integral;
    command(i) = base + g.ki * integral;
  }

  ControlOutput out;
  out.commanded = {command, Frame::body};
  const SaturatedWrench sat = saturate(out.commanded, limits);
  out.applied = sat.wrench;
  out.saturated = sat.saturated;
  return out;
}

std::string_view to_string(ControllerKind kind) {
  return kind == ControllerKind::nfc ? "nfc" : "pid";
}

ControllerKind controller_kind_from_string(std::string_view name) {
  if (name == "nfc" || name == "NFC") {
    return ControllerKind::nfc;
  }
  if (name == "pid" || name == "PID") {
    return ControllerKind::pid;
  }
  throw std::invalid_argument("unknown controller kind: " + std::string(name));
}

NfcController::NfcController(ModelParams nominal, NfcGains gains, SaturationLimits limits)
    : nominal_(std::move(nominal)), gains_(gains), limits_(limits) {
  nominal_.validate();
}

ControlOutput NfcController::update(const VehicleState& estimate, const ReferencePoint& ref, double /*dt*/) {
  return nfc_wrench(estimate, ref, nominal_, gains_, limits_);
}

PidController::PidController(PidGains gains, SaturationLimits limits) : gains_(gains), limits_(limits) {}

ControlOutput PidController::update(const VehicleState& estimate, const ReferencePoint& ref, double dt) {
  return pid_wrench(estimate, ref, gains_, dt, memory_, limits_);
}

}  // namespace rovnav
