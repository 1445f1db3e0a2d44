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

#include <benchmark/benchmark.h>

#include "rovnav/controllers.hpp"
#include "rovnav/dynamics.hpp"

namespace {

using namespace rovnav;

VehicleState moving_state() {
  VehicleState s;
  s.eta = PlanarPose(1.0, 0.5, 0.35, 0.3);
  s.nu = {0.1, -0.05, 0.02, 0.1};
  return s;
}

ReferencePoint nearby_reference() {
  ReferencePoint ref;
  ref.eta_d = PlanarPose(1.05, 0.45, 0.35, 0.25);
  ref.eta_d_dot << 0.1, 0.0, 0.0, 0.0;
  return ref;
}

void BM_Step(benchmark::State& bench) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  ControlWrench tau;
  tau.values << 2.0, -1.0, 0.5, 0.2;
  VehicleState s = moving_state();
  for (auto _ : bench) {
    s = step(s, p, tau, 0.01);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Step);

void BM_NfcWrench(benchmark::State& bench) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  const NfcGains gains = NfcGains::bluerov2();
  const SaturationLimits limits;
  const VehicleState s = moving_state();
  const ReferencePoint ref = nearby_reference();
  for (auto _ : bench) {
    benchmark::DoNotOptimize(nfc_wrench(s, ref, p, gains, limits));
  }
}
BENCHMARK(BM_NfcWrench);

void BM_PidWrench(benchmark::State& bench) {
  const PidGains gains = PidGains::bluerov2();
  const SaturationLimits limits;
  const VehicleState s = moving_state();
  const ReferencePoint ref = nearby_reference();
  PidMemory memory;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(pid_wrench(s, ref, gains, 0.01, memory, limits));
  }
}
BENCHMARK(BM_PidWrench);

void BM_VerifyStability(benchmark::State& bench) {
  const ModelParams p = ModelParams::bluerov2_nominal();
  const NfcGains gains = NfcGains::bluerov2();
  for (auto _ : bench) {
    benchmark::DoNotOptimize(verify_stability(gains, p, {0.1, 0.0, 0.0, 0.0}));
  }
}
BENCHMARK(BM_VerifyStability);

}  // namespace
