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

// Independent reference computations shared by the unit and acceptance suites.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "test_support.hpp"

namespace rovnav::testing {

/// Classic RK4 on an 8-vector state.
inline Vector8 rk4_step(const std::function<Vector8(const Vector8&)>& f, const Vector8& y, double h) {
  const Vector8 k1 = f(y);
  const Vector8 k2 = f(y + 0.5 * h * k1);
  const Vector8 k3 = f(y + 0.5 * h * k2);
  const Vector8 k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline VehicleState vehicle_from_world(const Vector8& y) {
  const Matrix4 j = transform_J(y(3));
  return {PlanarPose(y(0), y(1), y(2), y(3)), BodyVelocity::from_vector(j.transpose() * y.tail<4>())};
}

inline Vector8 world_from_vehicle(const VehicleState& s) {
  Vector8 y;
  y << s.eta.vector(), world_velocity(s);
  return y;
}

/// The world-frame form integrated on its own state [eta; eta_dot] (yaw not
/// wrapped) under a constant body wrench rotated at every stage.
inline Vector8 simulate_world_frame(const VehicleState& start, const ModelParams& p, const Vector4& tau_body,
                                    double dt, int steps) {
  auto derivative = [&](const Vector8& y) {
    Vector8 dy;
    dy.head<4>() = y.tail<4>();
    dy.tail<4>() = world_accel(vehicle_from_world(y), p, transform_J(y(3)) * tau_body);
    return dy;
  };
  Vector8 y = world_from_vehicle(start);
  for (int i = 0; i < steps; ++i) {
    y = rk4_step(derivative, y, dt);
  }
  return y;
}

/// Library body-frame integrator with yaw unwrapped, returned as [eta; eta_dot].
inline Vector8 simulate_body_frame(const VehicleState& start, const ModelParams& p, const Vector4& tau_body,
                                   double dt, int steps) {
  VehicleState s = start;
  double psi = start.eta.psi;
  for (int i = 0; i < steps; ++i) {
    const double before = s.eta.psi;
    s = step(s, p, {tau_body, Frame::body}, dt);
    psi += wrap_angle(s.eta.psi - before);
  }
  Vector8 y = world_from_vehicle(s);
  y(3) = psi;
  return y;
}

/// Body-frame equations written out by hand and solved with a tight
/// adaptive Dormand-Prince integrator. Returns [eta (yaw unwrapped); nu].
inline Vector8 odeint_reference(const VehicleState& start, const ModelParams& p, const Vector4& tau, double duration) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 8>;
  State y{start.eta.x, start.eta.y, start.eta.z, start.eta.psi, start.nu.u, start.nu.v, start.nu.w, start.nu.r};
  auto system = [&](const State& x, State& dxdt, double) {
    const double c = std::cos(x[3]);
    const double s = std::sin(x[3]);
    const double u = x[4], v = x[5], w = x[6], r = x[7];
    dxdt[0] = c * u - s * v;
    dxdt[1] = s * u + c * v;
    dxdt[2] = w;
    dxdt[3] = r;
    const double m11 = p.coriolis_m11, m22 = p.coriolis_m22;
    const auto& dl = p.linear_damping;
    const auto& dn = p.quadratic_damping;
    dxdt[4] = (tau(0) + m22 * v * r - (dl(0) + dn(0) * std::abs(u)) * u - p.tau_d(0)) / p.mass(0);
    dxdt[5] = (tau(1) - m11 * u * r - (dl(1) + dn(1) * std::abs(v)) * v - p.tau_d(1)) / p.mass(1);
    dxdt[6] = (tau(2) - (dl(2) + dn(2) * std::abs(w)) * w - p.buoyancy_minus_weight - p.tau_d(2)) / p.mass(2);
    dxdt[7] = (tau(3) - (m22 - m11) * u * v - (dl(3) + dn(3) * std::abs(r)) * r - p.tau_d(3)) / p.mass(3);
  };
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-14), system, y,
                             0.0, duration, 1e-4);
  Vector8 out;
  for (std::size_t i = 0; i < 8; ++i) {
    out(static_cast<int>(i)) = y[i];
  }
  return out;
}

/// Max-abs error of the library RK4 at step `dt` against `reference`, in the
/// [eta (yaw unwrapped); nu] layout of odeint_reference.
inline double rk4_global_error(const VehicleState& start, const ModelParams& p, const Vector4& tau, double duration,
                               double dt, const Vector8& reference) {
  const int steps = static_cast<int>(std::lround(duration / dt));
  const Vector8 world = simulate_body_frame(start, p, tau, dt, steps);
  Vector8 y;
  y.head<4>() = world.head<4>();
  y.tail<4>() = transform_J(world(3)).transpose() * world.tail<4>();
  return (y - reference).cwiseAbs().maxCoeff();
}

/// NFC closed loop with the law re-evaluated inside every integrator stage,
/// so no sample-and-hold enters the comparison. Calls `visit(k, e)` with the
/// stacked error after every step.
inline Vector8 run_continuous_nfc(const VehicleState& start, const ReferencePoint& ref, const ModelParams& p,
                                  const NfcGains& gains, double dt, int steps,
                                  const std::function<void(int, const Vector8&)>& visit = {}) {
  auto derivative = [&](const Vector8& y) {
    const VehicleState s = vehicle_from_world(y);
    Vector8 dy;
    dy.head<4>() = y.tail<4>();
    dy.tail<4>() = world_accel(s, p, nfc_world_wrench(s, ref, p, gains).values);
    return dy;
  };
  Vector8 y = world_from_vehicle(start);
  Vector8 e = tracking_error(start, ref).stacked();
  for (int k = 1; k <= steps; ++k) {
    y = rk4_step(derivative, y, dt);
    e = tracking_error(vehicle_from_world(y), ref).stacked();
    if (visit) {
      visit(k, e);
    }
  }
  return e;
}

/// Solves e_dot = A1(x(e)) e for a fixed reference on its own: the vehicle
/// state is recovered from e, so no controller or plant code is involved.
/// Returns e at every multiple of `interval` (index 0 is e0).
inline std::vector<Vector8> integrate_error_system(const ReferencePoint& ref, const Vector8& e0, const ModelParams& p,
                                                   const NfcGains& gains, double duration, double interval) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 8>;
  auto to_vector = [](const State& x) {
    Vector8 v;
    for (std::size_t i = 0; i < 8; ++i) {
      v(static_cast<int>(i)) = x[i];
    }
    return v;
  };
  auto system = [&](const State& x, State& dxdt, double) {
    const Vector8 e = to_vector(x);
    Vector8 y;
    y.head<4>() = ref.eta_d.vector() + e.head<4>();
    y.tail<4>() = ref.eta_d_dot + e.tail<4>();
    const Vector8 de = closed_loop_matrix(gains, vehicle_from_world(y), p) * e;
    for (std::size_t i = 0; i < 8; ++i) {
      dxdt[i] = de(static_cast<int>(i));
    }
  };
  State x{};
  for (std::size_t i = 0; i < 8; ++i) {
    x[i] = e0(static_cast<int>(i));
  }
  std::vector<Vector8> out;
  odeint::integrate_const(odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>()), system, x,
                          0.0, duration, interval, [&](const State& state, double) { out.push_back(to_vector(state)); });
  return out;
}

}  // namespace rovnav::testing
