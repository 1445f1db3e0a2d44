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

#include <random>

#include <benchmark/benchmark.h>

#include "rovnav/localization.hpp"
#include "rovnav/scenario.hpp"

namespace {

using namespace rovnav;

FusedEstimate start_estimate() {
  Vector8 x;
  x << 1.0, 0.5, 0.35, 0.3, 0.1, 0.0, 0.0, 0.05;
  return FusedEstimate::from_state(x, Matrix8::Identity() * 1e-4);
}

void BM_EkfPredict(benchmark::State& bench) {
  ProcessNoise q;
  q.accel_sigma = Vector4::Constant(0.1);
  const Vector4 accel(0.01, -0.02, 0.0, 0.005);
  FusedEstimate est = start_estimate();
  for (auto _ : bench) {
    est = ekf_predict(est, accel, 0.01, q);
    est.covariance = Matrix8::Identity() * 1e-4;
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_EkfPredict);

void BM_EkfUpdate(benchmark::State& bench) {
  MeasurementNoise r;
  r.sigma = Vector4::Constant(0.02);
  const FusedEstimate est = start_estimate();
  const PlanarPose measured(1.01, 0.49, 0.35, 0.31);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(ekf_update(est, measured, r));
  }
}
BENCHMARK(BM_EkfUpdate);

void BM_ObserveAndChain(benchmark::State& bench) {
  const TankBox tank;
  const TagMap map = tank_wall_tags(tank, 0.35);
  const RigidTransform camera_to_rig = forward_camera_to_rig({0.1, 0.0, 0.0});
  const RigidTransform pose = from_planar(PlanarPose(0.6, 0.85, 0.35, 3.14159));
  TagNoise noise;
  std::mt19937_64 rng(7);
  for (auto _ : bench) {
    for (const TagObservation& obs : observe_tags(pose, map, camera_to_rig, noise, 0.87, 3.0, 0.0, rng)) {
      benchmark::DoNotOptimize(pose_from_tag(obs, map, camera_to_rig));
    }
  }
}
BENCHMARK(BM_ObserveAndChain);

}  // namespace
