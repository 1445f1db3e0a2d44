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

#include "rovnav/episode.hpp"
#include "rovnav/planner.hpp"
#include "rovnav/scenario.hpp"

namespace {

using namespace rovnav;

void BM_BuildPlan(benchmark::State& bench) {
  BoundaryPolygon boundary;
  boundary.vertices = {{0.0, 0.0}, {2.59, 0.0}, {2.59, 1.70}, {0.0, 1.70}};
  boundary.depth = 0.35;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(build_plan(boundary, 0.4, 0.1, Eigen::Vector2d(0.4, 0.4)));
  }
}
BENCHMARK(BM_BuildPlan);

void BM_Episode(benchmark::State& bench) {
  Scenario s = standard_tank_scenario();
  s.controller = bench.range(0) == 0 ? ControllerKind::nfc : ControllerKind::pid;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(run_episode(s));
  }
}
BENCHMARK(BM_Episode)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
