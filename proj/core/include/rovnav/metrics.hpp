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

#include <span>

#include "rovnav/dynamics.hpp"

namespace rovnav {

/// Per-axis mean absolute error (x, y, z, psi); yaw differences are wrapped
/// before taking the absolute value. Throws std::invalid_argument on empty
/// or mismatched series.
Vector4 mae(std::span<const PlanarPose> actual, std::span<const PlanarPose> reference);

/// Per-axis root mean square error with the same conventions as mae().
Vector4 rmse(std::span<const PlanarPose> actual, std::span<const PlanarPose> reference);

}  // namespace rovnav
