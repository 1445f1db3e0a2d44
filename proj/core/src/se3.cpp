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

#include "rovnav/se3.hpp"

#include <cmath>
#include <stdexcept>

namespace rovnav {

bool is_rotation(const Eigen::Matrix3d& rotation, double tolerance) {
  if (!rotation.allFinite()) {
    return false;
  }
  const Eigen::Matrix3d gram = rotation.transpose() * rotation;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tolerance) {
    return false;
  }
  return std::abs(rotation.determinant() - 1.0) <= tolerance;
}

RigidTransform::RigidTransform(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
  if (!is_rotation(rotation)) {
    throw std::invalid_argument("RigidTransform: rotation is not orthonormal with det +1");
  }
  if (!translation.allFinite()) {
    throw std::invalid_argument("RigidTransform: non-finite translation");
  }
}

RigidTransform RigidTransform::from_translation(const Eigen::Vector3d& translation) {
  return {Eigen::Matrix3d::Identity(), translation};
}

RigidTransform RigidTransform::from_yaw(double yaw, const Eigen::Vector3d& translation) {
  return {Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix(), translation};
}

RigidTransform RigidTransform::from_flat(std::span<const double, 12> flat) {
  Eigen::Matrix3d rotation;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      rotation(row, col) = flat[static_cast<std::size_t>(3 * row + col)];
    }
  }
  return {rotation, Eigen::Vector3d(flat[9], flat[10], flat[11])};
}

std::array<double, 12> RigidTransform::to_flat() const {
  std::array<double, 12> flat{};
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      flat[static_cast<std::size_t>(3 * row + col)] = rotation_(row, col);
    }
  }
  flat[9] = translation_.x();
  flat[10] = translation_.y();
  flat[11] = translation_.z();
  return flat;
}

Eigen::Matrix4d RigidTransform::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  Eigen::Matrix3d rotation = a.rotation_ * b.rotation_;
  const Eigen::Vector3d translation = a.rotation_ * b.translation_ + a.translation_;
  std::uint32_t count = a.compositions_ + b.compositions_ + 1;
  if (count >= RigidTransform::kReorthonormalizePeriod) {
    rotation = orthonormalize(rotation);
    count = 0;
  }
  return {RigidTransform::Trusted{}, rotation, translation, count};
}

RigidTransform invert(const RigidTransform& t) {
  const Eigen::Matrix3d rotation = t.rotation_.transpose();
  return {RigidTransform::Trusted{}, rotation, -(rotation * t.translation_), t.compositions_};
}

RigidTransform chain_rig_pose(const RigidTransform& map_to_tag, const RigidTransform& tag_to_camera,
                              const RigidTransform& camera_to_rig) {
  return compose(compose(map_to_tag, tag_to_camera), camera_to_rig);
}

PlanarPose to_planar(const RigidTransform& t) {
  const Eigen::Matrix3d& r = t.rotation();
  const Eigen::Vector3d& p = t.translation();
  return {p.x(), p.y(), p.z(), std::atan2(r(1, 0), r(0, 0))};
}

RigidTransform from_planar(const PlanarPose& pose) {
  return RigidTransform::from_yaw(pose.psi, pose.position());
}

Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& rotation) {
  const Eigen::Vector3d c0 = rotation.col(0).normalized();
  const Eigen::Vector3d c1 = (rotation.col(1) - c0.dot(rotation.col(1)) * c0).normalized();
  Eigen::Matrix3d out;
  out.col(0) = c0;
  out.col(1) = c1;
  out.col(2) = c0.cross(c1);
  return out;
}

}  // namespace rovnav
