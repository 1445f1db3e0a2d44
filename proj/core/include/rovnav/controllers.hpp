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
#include <complex>
#include <memory>
#include <string_view>

#include "rovnav/dynamics.hpp"

namespace rovnav {

/// Desired world-frame pose with its first two time derivatives.
struct ReferencePoint {
  PlanarPose eta_d;
  Vector4 eta_d_dot = Vector4::Zero();
  Vector4 eta_d_ddot = Vector4::Zero();
};

/// eps = eta - eta_d (yaw wrapped), eps_dot = J(psi) nu - eta_d_dot.
struct TrackingError {
  Vector4 eps = Vector4::Zero();
  Vector4 eps_dot = Vector4::Zero();

  /// e = [eps; eps_dot]
  Vector8 stacked() const {
    Vector8 e;
    e << eps, eps_dot;
    return e;
  }
};

TrackingError tracking_error(const VehicleState& state, const ReferencePoint& ref);

/// Error dynamics e_dot = A e + B f at one operating point.
struct ErrorSystem {
  Matrix8 A;
  Eigen::Matrix<double, 8, 4> B;
  Matrix4 N;  // -M_eta^-1 (C_eta + D_eta)
};

ErrorSystem error_system_matrices(const VehicleState& state, const ModelParams& p);

/// Diagonal feedback gains. The state feedback is K = [K1, K2], so stable
/// gains carry negative entries (the BlueROV2 set is K1 = diag(-300, ...)).
struct NfcGains {
  Vector4 k1 = Vector4::Zero();
  Vector4 k2 = Vector4::Zero();

  static NfcGains bluerov2();
  Eigen::Matrix<double, 4, 8> feedback() const;
};

/// Closed-loop matrix A1 = A + B K.
Matrix8 closed_loop_matrix(const NfcGains& gains, const VehicleState& state, const ModelParams& p);

struct StabilityReport {
  bool stable = false;
  std::array<std::complex<double>, 8> eigenvalues{};
  double spectral_abscissa = 0.0;  // max real part
};

/// Eigen-analysis of A1 at the operating point (psi = 0, body velocity nu).
/// Stable iff every eigenvalue has a strictly negative real part.
StabilityReport verify_stability(const NfcGains& gains, const ModelParams& p, const BodyVelocity& nu);

struct SampledStabilityReport {
  bool stable = false;
  double spectral_radius = 0.0;
};

/// Same operating point, but with the feedback sampled and held every dt
/// seconds: checks the spectral radius of the discretized closed loop.
SampledStabilityReport verify_sampled_stability(const NfcGains& gains, const ModelParams& p,
                                                const BodyVelocity& nu, double dt);

/// Control law output. `commanded` is the unsaturated request in the frame
/// the law computes it in; `applied` is the saturated body-frame wrench.
struct ControlOutput {
  ControlWrench commanded;
  ControlWrench applied;
  bool saturated = false;
};

/// tau_eta = M_eta (K e + eta_d_ddot) + (C_eta + D_eta) eta_d_dot + g_eta + tau_e,
/// computed from the nominal parameters `p`. Returned in the world frame.
ControlWrench nfc_world_wrench(const VehicleState& state, const ReferencePoint& ref, const ModelParams& p,
                               const NfcGains& gains);

/// nfc_world_wrench rotated into the body frame and saturated.
ControlOutput nfc_wrench(const VehicleState& state, const ReferencePoint& ref, const ModelParams& p,
                         const NfcGains& gains, const SaturationLimits& limits);

struct PidAxisGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

/// Axis mapping: lateral -> fx, throttle -> fy, depth -> fz, yaw -> mz.
/// Horizontal errors are resolved in the body frame before the per-axis loops.
struct PidGains {
  PidAxisGains lateral;
  PidAxisGains throttle;
  PidAxisGains depth;
  PidAxisGains yaw;
  /// Open-loop force per unit desired sway speed on the throttle axis (N s/m).
  double throttle_feedforward = 0.0;

  static PidGains bluerov2();
  /// Gains ordered as the wrench components (fx, fy, fz, mz).
  std::array<PidAxisGains, 4> by_component() const { return {lateral, throttle, depth, yaw}; }
};

struct PidMemory {
  Vector4 integral = Vector4::Zero();
  Vector4 previous_signal = Vector4::Zero();
  Vector4 filtered_derivative = Vector4::Zero();
  bool initialized = false;
};

/// Derivative low-pass time constant, in units of the controller period.
inline constexpr double kPidDerivativeFilterPeriods = 5.0;

/// Per-axis u = kp s + ki \int s + kd ds/dt with s = -eps (body resolved),
/// filtered backward-difference derivative and conditional integration.
ControlOutput pid_wrench(const VehicleState& state, const ReferencePoint& ref, const PidGains& gains, double dt,
                         PidMemory& memory, const SaturationLimits& limits);

enum class ControllerKind { nfc, pid };

std::string_view to_string(ControllerKind kind);
ControllerKind controller_kind_from_string(std::string_view name);

/// Stateful control law evaluated once per control period.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual ControllerKind kind() const = 0;
  virtual ControlOutput update(const VehicleState& estimate, const ReferencePoint& ref, double dt) = 0;
  virtual void reset() = 0;
};

class NfcController final : public Controller {
 public:
  NfcController(ModelParams nominal, NfcGains gains, SaturationLimits limits);

  ControllerKind kind() const override { return ControllerKind::nfc; }
  ControlOutput update(const VehicleState& estimate, const ReferencePoint& ref, double dt) override;
  void reset() override {}

  const ModelParams& nominal() const { return nominal_; }
  const NfcGains& gains() const { return gains_; }

 private:
  ModelParams nominal_;
  NfcGains gains_;
  SaturationLimits limits_;
};

class PidController final : public Controller {
 public:
  PidController(PidGains gains, SaturationLimits limits);

  ControllerKind kind() const override { return ControllerKind::pid; }
  ControlOutput update(const VehicleState& estimate, const ReferencePoint& ref, double dt) override;
  void reset() override { memory_ = {}; }

  const PidMemory& memory() const { return memory_; }

 private:
  PidGains gains_;
  SaturationLimits limits_;
  PidMemory memory_;
};

}  // namespace rovnav
