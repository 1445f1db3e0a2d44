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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"

namespace rovnav {
namespace {

using testing::random_state;
using testing::run_continuous_nfc;
using testing::random_vector4;
using testing::rich_params;
using testing::uniform;

ReferencePoint random_reference(std::mt19937_64& rng) {
  ReferencePoint ref;
  ref.eta_d = PlanarPose(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, 0, 1), uniform(rng, -kPi, kPi));
  ref.eta_d_dot = random_vector4(rng, 0.3);
  ref.eta_d_ddot = random_vector4(rng, 0.2);
  return ref;
}

TEST(TrackingError, ZeroAtReference) {
  VehicleState s;
  s.eta = PlanarPose(1.0, 2.0, 0.3, 0.7);
  s.nu = {0.1, 0.05, 0.0, 0.02};
  ReferencePoint ref;
  ref.eta_d = s.eta;
  ref.eta_d_dot = world_velocity(s);
  const TrackingError e = tracking_error(s, ref);
  EXPECT_EQ(e.eps, Vector4::Zero());
  EXPECT_LT(e.eps_dot.norm(), 1e-16);
}

TEST(TrackingError, YawUsesShortestWrap) {
  VehicleState s;
  ReferencePoint ref;
  s.eta.psi = 0.1;
  ref.eta_d.psi = -0.1;
  EXPECT_NEAR(tracking_error(s, ref).eps(3), 0.2, 1e-15);
  s.eta.psi = kPi - 0.05;
  ref.eta_d.psi = -kPi + 0.05;
  EXPECT_NEAR(tracking_error(s, ref).eps(3), -0.1, 1e-12);
}

TEST(TrackingError, YawErrorNeverLeavesHalfOpenInterval) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10000; ++i) {
    const VehicleState s = random_state(rng);
    const ReferencePoint ref = random_reference(rng);
    const double e = tracking_error(s, ref).eps(3);
    EXPECT_GT(e, -kPi);
    EXPECT_LE(e, kPi);
  }
}

TEST(ErrorSystem, DiagonalNAtRest) {
  const ErrorSystem sys = error_system_matrices({}, ModelParams::bluerov2_nominal());
  const Vector4 expected(-5.5 / 25.2, -7.0 / 25.2, -8.0 / 25.2, -1.0 / 0.402);
  EXPECT_LT((sys.N - Matrix4(expected.asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ErrorSystem, BlockStructure) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const ErrorSystem sys = error_system_matrices(random_state(rng, 1.0), rich_params());
    EXPECT_EQ((sys.A.topLeftCorner<4, 4>()), Matrix4::Zero());
    EXPECT_EQ((sys.A.topRightCorner<4, 4>()), Matrix4::Identity());
    EXPECT_EQ((sys.A.bottomLeftCorner<4, 4>()), Matrix4::Zero());
    EXPECT_EQ((sys.A.bottomRightCorner<4, 4>()), sys.N);
    EXPECT_EQ((sys.B.topRows<4>()), Matrix4::Zero());
    EXPECT_EQ((sys.B.bottomRows<4>()), Matrix4::Identity());
  }
}

// Unforced plant (no buoyancy, no disturbance) tracking a fixed reference, so
// the error obeys e_dot = A e. Central differences of the simulated error must
// match A e along the trajectory.
TEST(ErrorSystem, MatchesFiniteDifferencedUnforcedError) {
  std::mt19937_64 rng(33);
  ModelParams p = ModelParams::bluerov2_nominal();
  for (int trial = 0; trial < 10; ++trial) {
    VehicleState s = random_state(rng, 0.5);
    ReferencePoint ref;
    ref.eta_d = PlanarPose(uniform(rng, -1, 1), uniform(rng, -1, 1), 0.5, uniform(rng, -1, 1));
    const double h = 1e-4;
    const ControlWrench zero{Vector4::Zero(), Frame::body};
    for (int k = 0; k < 50; ++k) {
      const VehicleState before = s;
      const VehicleState mid = step(before, p, zero, h);
      const VehicleState after = step(mid, p, zero, h);
      const Vector8 e_before = tracking_error(before, ref).stacked();
      const Vector8 e_after = tracking_error(after, ref).stacked();
      Vector8 diff = (e_after - e_before) / (2.0 * h);
      diff(3) = wrap_angle(e_after(3) - e_before(3)) / (2.0 * h);
      const Vector8 predicted = error_system_matrices(mid, p).A * tracking_error(mid, ref).stacked();
      EXPECT_LT((diff - predicted).cwiseAbs().maxCoeff(), 1e-6);
      s = step(mid, p, zero, 0.05);
    }
  }
}

TEST(NfcWorldWrench, ZeroAtRestOnReference) {
  const ControlWrench w = nfc_world_wrench({}, {}, ModelParams::bluerov2_nominal(), NfcGains::bluerov2());
  EXPECT_EQ(w.frame, Frame::world);
  EXPECT_EQ(w.values, Vector4::Zero());
}

TEST(NfcWorldWrench, ReducesToMassTimesAcceleration) {
  ReferencePoint ref;
  ref.eta_d_ddot = {1.0, 0.0, 0.0, 0.0};
  const ControlWrench w = nfc_world_wrench({}, ref, ModelParams::bluerov2_nominal(), NfcGains::bluerov2());
  EXPECT_LT((w.values - Vector4(25.2, 0, 0, 0)).norm(), 1e-12);
}

// Substituting the law into the world-frame dynamics must leave
// eps_ddot = K e + N eps_dot, the lower block of A1 e.
TEST(NfcWorldWrench, SubstitutionGivesClosedLoopErrorDynamics) {
  std::mt19937_64 rng(34);
  const ModelParams p = rich_params();
  const NfcGains gains = NfcGains::bluerov2();
  for (int i = 0; i < 1000; ++i) {
    const VehicleState s = random_state(rng, 0.5);
    const ReferencePoint ref = random_reference(rng);
    const ControlWrench tau = nfc_world_wrench(s, ref, p, gains);
    const Vector4 eta_ddot = world_accel(s, p, tau.values);
    const Vector4 eps_ddot = eta_ddot - ref.eta_d_ddot;
    const Vector8 e = tracking_error(s, ref).stacked();
    const Vector8 expected = closed_loop_matrix(gains, s, p) * e;
    EXPECT_LT((eps_ddot - expected.tail<4>()).cwiseAbs().maxCoeff(), 1e-9 * (1.0 + eps_ddot.norm()));
  }
}

TEST(NfcWrench, ReturnsSaturatedBodyWrench) {
  VehicleState s;
  s.eta.psi = kPi / 2.0;
  ReferencePoint ref;
  ref.eta_d = PlanarPose(1.0, 0.0, 0.0, kPi / 2.0);
  const ControlOutput out = nfc_wrench(s, ref, ModelParams::bluerov2_nominal(), NfcGains::bluerov2(), {});
  EXPECT_EQ(out.commanded.frame, Frame::world);
  EXPECT_EQ(out.applied.frame, Frame::body);
  EXPECT_TRUE(out.saturated);
  // World +x is body -y at this heading.
  EXPECT_NEAR(out.applied.values(0), 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(out.applied.values(1), -40.0);
}

std::vector<std::complex<double>> sorted(std::vector<std::complex<double>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

TEST(VerifyStability, ZeroGainsAreNotStable) {
  const StabilityReport r = verify_stability({}, ModelParams::bluerov2_nominal(), {});
  EXPECT_FALSE(r.stable);
  EXPECT_NEAR(r.spectral_abscissa, 0.0, 1e-12);
}

TEST(VerifyStability, PaperGainsStableAtRestAndCruise) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  EXPECT_TRUE(verify_stability(NfcGains::bluerov2(), p, {}).stable);
  EXPECT_TRUE(verify_stability(NfcGains::bluerov2(), p, {0.1, 0.0, 0.0, 0.0}).stable);
  EXPECT_TRUE(verify_stability(NfcGains::bluerov2(), p, {0.0, 0.1, 0.0, 0.0}).stable);
}

TEST(VerifyStability, PositiveStiffnessIsUnstable) {
  NfcGains g = NfcGains::bluerov2();
  g.k1 = Vector4::Constant(10.0);
  EXPECT_FALSE(verify_stability(g, ModelParams::bluerov2_nominal(), {}).stable);
  g.k2 = Vector4::Constant(-1000.0);
  EXPECT_FALSE(verify_stability(g, ModelParams::bluerov2_nominal(), {}).stable);
}

// At rest the axes decouple into s^2 - (k2 + n) s - k1 = 0.
TEST(VerifyStability, EigenvaluesMatchPerAxisQuadratics) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  const NfcGains g = NfcGains::bluerov2();
  const Vector4 n = -p.linear_damping.cwiseQuotient(p.mass);
  std::vector<std::complex<double>> oracle;
  for (int i = 0; i < 4; ++i) {
    const double b = -(g.k2(i) + n(i));
    const double c = -g.k1(i);
    const std::complex<double> root = std::sqrt(std::complex<double>(b * b - 4.0 * c, 0.0));
    oracle.push_back((-b + root) / 2.0);
    oracle.push_back((-b - root) / 2.0);
  }
  oracle = sorted(oracle);
  const StabilityReport r = verify_stability(g, p, {});
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    EXPECT_NEAR(r.eigenvalues[i].real(), oracle[i].real(), 1e-9 * std::abs(oracle[i]));
    EXPECT_NEAR(r.eigenvalues[i].imag(), oracle[i].imag(), 1e-9 * std::abs(oracle[i]) + 1e-12);
  }
  EXPECT_DOUBLE_EQ(r.spectral_abscissa, r.eigenvalues.back().real());
}

TEST(VerifySampledStability, ShrinksWithStep) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  const NfcGains g = NfcGains::bluerov2();
  EXPECT_TRUE(verify_sampled_stability(g, p, {}, 1e-3).stable);
  EXPECT_GT(verify_sampled_stability(g, p, {}, 0.01).spectral_radius,
            verify_sampled_stability(g, p, {}, 1e-3).spectral_radius);
  EXPECT_THROW(verify_sampled_stability(g, p, {}, 0.0), std::invalid_argument);
}

TEST(NfcClosedLoop, ExactLinearizationMatchesErrorSystem) {
  std::mt19937_64 rng(35);
  const ModelParams p = ModelParams::bluerov2_nominal();
  const NfcGains gains = NfcGains::bluerov2();
  ReferencePoint ref;
  ref.eta_d = PlanarPose(1.0, 0.8, 0.4, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector4 eps = random_vector4(rng, 1.0);
    eps *= uniform(rng, 0.0, 0.3) / eps.norm();
    VehicleState start;
    start.eta = PlanarPose::from_vector(ref.eta_d.vector() + eps);
    const Vector8 e0 = tracking_error(start, ref).stacked();
    const std::vector<Vector8> oracle = testing::integrate_error_system(ref, e0, p, gains, 10.0, 1e-3);
    double worst = 0.0;
    run_continuous_nfc(start, ref, p, gains, 1e-3, 10000, [&](int k, const Vector8& e) {
      worst = std::max(worst, (e - oracle[static_cast<std::size_t>(k)]).cwiseAbs().maxCoeff());
    });
    EXPECT_LT(worst, 1e-3) << "trial " << trial;
  }
}

// Freezing A1 at rest is only an approximation once yaw and speed move.
TEST(NfcClosedLoop, FrozenOperatingPointStaysClose) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  const NfcGains gains = NfcGains::bluerov2();
  ReferencePoint ref;
  ref.eta_d = PlanarPose(1.0, 0.8, 0.4, 0.0);
  VehicleState start;
  start.eta = PlanarPose(1.1, 0.9, 0.45, 0.1);
  Vector8 e_lin = tracking_error(start, ref).stacked();
  const Matrix8 propagator = (closed_loop_matrix(gains, {}, p) * 1e-3).exp();
  double worst = 0.0;
  run_continuous_nfc(start, ref, p, gains, 1e-3, 10000, [&](int, const Vector8& e) {
    e_lin = propagator * e_lin;
    worst = std::max(worst, (e - e_lin).cwiseAbs().maxCoeff());
  });
  EXPECT_LT(worst, 5e-3);
}

TEST(NfcClosedLoop, ConvergesFromPaperInitialError) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  ReferencePoint ref;
  ref.eta_d = PlanarPose(1.0, 1.0, 0.5, 0.0);
  VehicleState start;
  start.eta = PlanarPose(1.2, 1.2, 0.6, 0.3);
  std::vector<double> norms;
  const Vector8 e_end = run_continuous_nfc(start, ref, p, NfcGains::bluerov2(), 1e-3, 20000,
                                           [&](int, const Vector8& e) { norms.push_back(e.norm()); });
  EXPECT_LT(e_end.norm(), 1e-2);
  // Eventually monotone: find the last increase and require it early on.
  std::size_t last_increase = 0;
  for (std::size_t i = 1; i < norms.size(); ++i) {
    if (norms[i] > norms[i - 1]) {
      last_increase = i;
    }
  }
  EXPECT_LT(last_increase, norms.size() / 2);
}

TEST(Pid, ZeroErrorGivesZeroWrench) {
  PidMemory memory;
  for (int i = 0; i < 10; ++i) {
    const ControlOutput out = pid_wrench({}, {}, PidGains::bluerov2(), 0.01, memory, {});
    EXPECT_EQ(out.applied.values, Vector4::Zero());
    EXPECT_FALSE(out.saturated);
  }
}

TEST(Pid, ProportionalLateralForce) {
  VehicleState s;
  s.eta.x = -0.01;
  PidMemory memory;
  ControlOutput out;
  for (int i = 0; i < 50; ++i) {
    out = pid_wrench(s, {}, PidGains::bluerov2(), 0.01, memory, {});
  }
  EXPECT_NEAR(out.applied.values(0), 4.0, 1e-12);
  EXPECT_EQ(out.applied.frame, Frame::body);
}

TEST(Pid, HorizontalErrorResolvedInBodyFrame) {
  VehicleState s;
  s.eta = PlanarPose(0.0, -0.01, 0.0, kPi / 2.0);
  ReferencePoint ref;
  ref.eta_d.psi = kPi / 2.0;
  PidMemory memory;
  const ControlOutput out = pid_wrench(s, ref, PidGains::bluerov2(), 0.01, memory, {});
  // World +y is body +x when facing +y.
  EXPECT_NEAR(out.applied.values(0), 4.0, 1e-12);
  EXPECT_NEAR(out.applied.values(1), 0.0, 1e-12);
}

// Two hand-simulated ticks of the filtered difference equation after a 0.1 m
// lateral step: s = 0.1, raw derivative 10 m/s, filter weight 5/6.
TEST(Pid, DerivativeKickIsBoundedBySaturation) {
  const double dt = 0.01;
  const double alpha = 5.0 / 6.0;
  const double d1 = (1.0 - alpha) * (0.1 / dt);
  const double d2 = alpha * d1;
  const double tick1 = 400.0 * 0.1 + 50.0 * d1;
  const double tick2 = 400.0 * 0.1 + 50.0 * d2;
  EXPECT_NEAR(tick1, 123.3333333333, 1e-9);

  VehicleState on_ref;
  VehicleState stepped;
  stepped.eta.x = -0.1;

  PidMemory unlimited_memory;
  pid_wrench(on_ref, {}, PidGains::bluerov2(), dt, unlimited_memory, SaturationLimits::unlimited());
  ControlOutput out = pid_wrench(stepped, {}, PidGains::bluerov2(), dt, unlimited_memory, SaturationLimits::unlimited());
  EXPECT_NEAR(out.applied.values(0), tick1, 1e-9);
  EXPECT_FALSE(out.saturated);
  out = pid_wrench(stepped, {}, PidGains::bluerov2(), dt, unlimited_memory, SaturationLimits::unlimited());
  EXPECT_NEAR(out.applied.values(0), tick2, 1e-9);

  PidMemory memory;
  pid_wrench(on_ref, {}, PidGains::bluerov2(), dt, memory, {});
  out = pid_wrench(stepped, {}, PidGains::bluerov2(), dt, memory, {});
  EXPECT_TRUE(out.saturated);
  EXPECT_DOUBLE_EQ(out.applied.values(0), 40.0);
  EXPECT_NEAR(out.commanded.values(0), tick1, 1e-9);
}

TEST(Pid, ZeroIntegralGainKeepsIntegratorEmpty) {
  std::mt19937_64 rng(36);
  PidMemory memory;
  for (int i = 0; i < 10000; ++i) {
    pid_wrench(random_state(rng), random_reference(rng), PidGains::bluerov2(), 0.01, memory, {});
    ASSERT_EQ(memory.integral, Vector4::Zero());
  }
}

TEST(Pid, ConditionalIntegrationStopsWindup) {
  PidGains g;
  g.lateral = {0.0, 100.0, 0.0};
  VehicleState s;
  s.eta.x = -1.0;
  PidMemory memory;
  for (int i = 0; i < 1000; ++i) {
    pid_wrench(s, {}, g, 0.01, memory, {});
  }
  // Output reaches the 40 N bound after 0.4 s of integration and stops there.
  EXPECT_NEAR(memory.integral(0), 0.4, 0.011);
}

TEST(Pid, ThrottleFeedforwardFollowsDesiredSway) {
  ReferencePoint ref;
  ref.eta_d_dot = {0.0, 0.1, 0.0, 0.0};
  VehicleState s;
  s.nu.v = 0.1;
  PidMemory memory;
  const ControlOutput out = pid_wrench(s, ref, PidGains::bluerov2(), 0.01, memory, {});
  EXPECT_NEAR(out.applied.values(1), 0.7, 1e-12);
}

TEST(ControllerKind, RoundTripsNames) {
  EXPECT_EQ(controller_kind_from_string(to_string(ControllerKind::nfc)), ControllerKind::nfc);
  EXPECT_EQ(controller_kind_from_string("PID"), ControllerKind::pid);
  EXPECT_THROW(controller_kind_from_string("lqr"), std::invalid_argument);
}

TEST(Controllers, ObjectsMatchFreeFunctions) {
  std::mt19937_64 rng(37);
  NfcController nfc(ModelParams::bluerov2_nominal(), NfcGains::bluerov2(), {});
  PidController pid(PidGains::bluerov2(), {});
  PidMemory memory;
  for (int i = 0; i < 100; ++i) {
    const VehicleState s = random_state(rng);
    const ReferencePoint ref = random_reference(rng);
    EXPECT_EQ(nfc.update(s, ref, 0.01).applied.values,
              nfc_wrench(s, ref, ModelParams::bluerov2_nominal(), NfcGains::bluerov2(), {}).applied.values);
    EXPECT_EQ(pid.update(s, ref, 0.01).applied.values,
              pid_wrench(s, ref, PidGains::bluerov2(), 0.01, memory, {}).applied.values);
  }
  pid.reset();
  EXPECT_FALSE(pid.memory().initialized);
}

}  // namespace
}  // namespace rovnav
