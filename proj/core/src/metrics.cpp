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

#include "rovnav/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace rovnav {

namespace {

Vector4 pose_error(const PlanarPose& actual, const PlanarPose& reference) {
  Vector4 err = actual.vector() - reference.vector();
  err(3) = wrap_angle(actual.psi - reference.psi);
  return err;
}

void check_lengths(std::span<const PlanarPose> actual, std::span<const PlanarPose> reference) {
  if (actual.size() != reference.size()) {
    throw std::invalid_argument("metrics: series lengths differ");
  }
  if (actual.empty()) {
    throw std::invalid_argument("metrics: empty series");
  }
}

}  // namespace

Vector4 mae(std::span<const PlanarPose> actual, std::span<const PlanarPose> reference) {
  check_lengths(actual, reference);
  Vector4 sum = Vector4::Zero();
  for (std::size_t i = 0; i < actual.size(); ++i) {
    sum += pose_error(actual[i], reference[i]).cwiseAbs();
  }
  return sum / static_cast<double>(actual.size());
}

Vector4 rmse(std::span<const PlanarPose> actual, std::span<const PlanarPose> reference) {
  check_lengths(actual, reference);
  Vector4 sum = Vector4::Zero();
  for (std::size_t i = 0; i < actual.size(); ++i) {
    sum += pose_error(actual[i], reference[i]).cwiseAbs2();
  }
  return (sum / static_cast<double>(actual.size())).cwiseSqrt();
}

}  // namespace rovnav
