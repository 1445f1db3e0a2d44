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
#include <cstdint>
#include <span>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "rovnav/angles.hpp"

namespace rovnav {

/// World-frame position and yaw of the vehicle, the four controlled DoF.
/// psi is kept wrapped to (-pi, pi] by every constructor.
struct PlanarPose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double psi = 0.0;

  PlanarPose() = default;
  PlanarPose(double x_m, double y_m, double z_m, double psi_rad)
      : x(x_m), y(y_m), z(z_m), psi(wrap_angle(psi_rad)) {}

  Eigen::Vector4d vector() const { return {x, y, z, psi}; }
  static PlanarPose from_vector(const Eigen::Vector4d& v) {
    return {v(0), v(1), v(2), v(3)};
  }
  Eigen::Vector3d position() const { return {x, y, z}; }
};

/// Proper rigid transform: orthonormal rotation with det +1 plus translation.
///
/// Naming follows the pose-chain convention: `T_a_b` maps coordinates
/// expressed in frame b into frame a, i.e. it is the pose of b seen from a.
/// `compose(T_a_b, T_b_c)` then yields `T_a_c`.
class RigidTransform {
 public:
  /// Orthonormality tolerance used when validating user supplied rotations.
  static constexpr double kRotationTolerance = 1e-9;
  /// Compositions after which the rotation is re-orthonormalized.
  static constexpr std::uint32_t kReorthonormalizePeriod = 1000;

  RigidTransform() = default;

  /// Throws std::invalid_argument when `rotation` is not a proper rotation
  /// or any entry is non-finite.
  RigidTransform(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Eigen::Vector3d& translation);
  static RigidTransform from_yaw(double yaw, const Eigen::Vector3d& translation = Eigen::Vector3d::Zero());

  /// Flat record: nine rotation entries row-major, then three translation entries.
  static RigidTransform from_flat(std::span<const double, 12> flat);
  std::array<double, 12> to_flat() const;

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  /// 4x4 homogeneous matrix.
  Eigen::Matrix4d matrix() const;

  Eigen::Vector3d apply(const Eigen::Vector3d& point) const { return rotation_ * point + translation_; }

  /// Compositions accumulated since the last re-orthonormalization.
  std::uint32_t compositions_since_orthonormalization() const { return compositions_; }

  friend RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
  friend RigidTransform invert(const RigidTransform& t);

 private:
  struct Trusted {};
  RigidTransform(Trusted, const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation,
                 std::uint32_t compositions)
      : rotation_(rotation), translation_(translation), compositions_(compositions) {}

  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
  std::uint32_t compositions_ = 0;
};

/// Applies b, then a. Product semantics: matrix(a) * matrix(b).
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

RigidTransform invert(const RigidTransform& t);

/// T_map_rig = T_map_tag * T_tag_camera * T_camera_rig.
RigidTransform chain_rig_pose(const RigidTransform& map_to_tag, const RigidTransform& tag_to_camera,
                              const RigidTransform& camera_to_rig);

/// Keeps x, y, z and the yaw atan2(R10, R00); roll and pitch are dropped.
PlanarPose to_planar(const RigidTransform& t);

/// Level transform (zero roll and pitch) for a planar pose.
RigidTransform from_planar(const PlanarPose& pose);

/// Gram-Schmidt on the columns, returning a proper rotation.
Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& rotation);

bool is_rotation(const Eigen::Matrix3d& rotation, double tolerance = RigidTransform::kRotationTolerance);

}  // namespace rovnav
