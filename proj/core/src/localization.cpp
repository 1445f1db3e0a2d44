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

#include "rovnav/localization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace rovnav {

UnknownTag::UnknownTag(int id) : std::out_of_range("unknown tag id " + std::to_string(id)), id_(id) {}

TagMap::TagMap(std::vector<Tag> tags) {
  for (auto& tag : tags) {
    add(std::move(tag));
  }
}

void TagMap::add(Tag tag) {
  const auto it = std::lower_bound(tags_.begin(), tags_.end(), tag.id,
                                   [](const Tag& t, int id) { return t.id < id; });
  if (it != tags_.end() && it->id == tag.id) {
    throw std::invalid_argument("TagMap: duplicate tag id " + std::to_string(tag.id));
  }
  tags_.insert(it, std::move(tag));
}

const RigidTransform* TagMap::find(int id) const {
  const auto it =
      std::lower_bound(tags_.begin(), tags_.end(), id, [](const Tag& t, int key) { return t.id < key; });
  return it != tags_.end() && it->id == id ? &it->map_to_tag : nullptr;
}

const RigidTransform& TagMap::at(int id) const {
  const RigidTransform* pose = find(id);
  if (pose == nullptr) {
    throw UnknownTag(id);
  }
  return *pose;
}

namespace {

RigidTransform perturb(const RigidTransform& t, const TagNoise& noise, std::mt19937_64& rng) {
  std::normal_distribution<double> standard(0.0, 1.0);
  Eigen::Vector3d axis(standard(rng), standard(rng), standard(rng));
  const double angle = noise.sigma_rotation * standard(rng);
  const Eigen::Vector3d offset(standard(rng), standard(rng), standard(rng));
  if (axis.norm() < 1e-12) {
    axis = Eigen::Vector3d::UnitZ();
  }
  const Eigen::Matrix3d delta = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return {orthonormalize(delta * t.rotation()), t.translation() + noise.sigma_translation * offset};
}

}  // namespace

std::vector<TagObservation> observe_tags(const RigidTransform& true_pose, const TagMap& map,
                                         const RigidTransform& camera_to_rig, const TagNoise& noise,
                                         double fov_half_angle, double range, double timestamp,
                                         std::mt19937_64& rng) {
  // T_camera_map = T_camera_rig * T_rig_map
  const RigidTransform camera_from_map = compose(camera_to_rig, invert(true_pose));
  std::vector<TagObservation> out;
  for (const Tag& tag : map.tags()) {
    const RigidTransform camera_from_tag = compose(camera_from_map, tag.map_to_tag);
    const Eigen::Vector3d& p = camera_from_tag.translation();
    if (p.z() <= 0.0 || p.norm() > range) {
      continue;
    }
    if (std::atan2(p.head<2>().norm(), p.z()) > fov_half_angle) {
      continue;
    }
    // Tag normal must point back towards the camera.
    if (camera_from_tag.rotation().col(2).dot(p) >= 0.0) {
      continue;
    }
    const bool noisy = noise.sigma_translation > 0.0 || noise.sigma_rotation > 0.0;
    out.push_back({tag.id, noisy ? perturb(camera_from_tag, noise, rng) : camera_from_tag, timestamp});
  }
  return out;
}

RigidTransform pose_from_tag(const TagObservation& obs, const TagMap& map, const RigidTransform& camera_to_rig) {
  const RigidTransform& map_to_tag = map.at(obs.id);
  return chain_rig_pose(map_to_tag, invert(obs.camera_from_tag), camera_to_rig);
}

RigidTransform forward_camera_to_rig(const Eigen::Vector3d& offset) {
  // Columns: camera x, y, z axes expressed in the rig frame.
  Eigen::Matrix3d rig_from_camera;
  rig_from_camera.col(0) = Eigen::Vector3d::UnitY();
  rig_from_camera.col(1) = Eigen::Vector3d::UnitZ();
  rig_from_camera.col(2) = Eigen::Vector3d::UnitX();
  return invert(RigidTransform(rig_from_camera, offset));
}

Vector8 FusedEstimate::state() const {
  Vector8 x;
  x << eta_hat.vector(), nu_hat.vector();
  return x;
}

FusedEstimate FusedEstimate::from_state(const Vector8& x, const Matrix8& covariance) {
  return {PlanarPose::from_vector(x.head<4>()), BodyVelocity::from_vector(x.tail<4>()), covariance};
}

Vector8 ekf_propagate(const Vector8& x, const Vector4& accel, double dt) {
  const Vector4 nu = x.tail<4>();
  Vector8 next;
  next.head<4>() = x.head<4>() + transform_J(x(3)) * (nu * dt + 0.5 * accel * dt * dt);
  next.tail<4>() = nu + accel * dt;
  next(3) = wrap_angle(next(3));
  return next;
}

Matrix8 ekf_transition_jacobian(const Vector8& x, const Vector4& accel, double dt) {
  const Vector4 displacement = x.tail<4>() * dt + 0.5 * accel * dt * dt;
  Matrix8 f = Matrix8::Identity();
  f.block<4, 1>(0, 3) += transform_J_dot(x(3), 1.0) * displacement;
  f.topRightCorner<4, 4>() = transform_J(x(3)) * dt;
  return f;
}

Matrix8 ekf_process_covariance(const Vector8& x, const ProcessNoise& q, double dt) {
  Eigen::Matrix<double, 8, 4> g;
  g.topRows<4>() = 0.5 * dt * dt * transform_J(x(3));
  g.bottomRows<4>() = dt * Matrix4::Identity();
  return g * q.accel_sigma.cwiseAbs2().asDiagonal() * g.transpose();
}

FusedEstimate ekf_predict(const FusedEstimate& est, const Vector4& imu_accel, double dt, const ProcessNoise& q) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ekf_predict: dt must be positive");
  }
  const Vector8 x = est.state();
  const Matrix8 f = ekf_transition_jacobian(x, imu_accel, dt);
  Matrix8 p = f * est.covariance * f.transpose() + ekf_process_covariance(x, q, dt);
  p = 0.5 * (p + p.transpose()).eval();
  return FusedEstimate::from_state(ekf_propagate(x, imu_accel, dt), p);
}

UpdateResult ekf_update(const FusedEstimate& est, const PlanarPose& measured, const MeasurementNoise& r) {
  UpdateResult result;
  result.estimate = est;

  const Vector8 x = est.state();
  const Matrix8& p = est.covariance;
  Vector4 innovation = measured.vector() - x.head<4>();
  innovation(3) = wrap_angle(measured.psi - est.eta_hat.psi);
  result.innovation = innovation;

  const Matrix4 r_mat = r.sigma.cwiseAbs2().asDiagonal();
  const Matrix4 s = p.topLeftCorner<4, 4>() + r_mat;
  const Eigen::FullPivLU<Matrix4> s_lu(s);
  if (!s_lu.isInvertible()) {
    return result;
  }
  const Matrix4 s_inv = s_lu.inverse();
  result.mahalanobis_sq = innovation.dot(s_inv * innovation);
  if (!(result.mahalanobis_sq <= kInnovationGate)) {
    return result;
  }

  const Eigen::Matrix<double, 8, 4> gain = p.leftCols<4>() * s_inv;
  Vector8 x_post = x + gain * innovation;
  x_post(3) = wrap_angle(x_post(3));

  Eigen::Matrix<double, 4, 8> h = Eigen::Matrix<double, 4, 8>::Zero();
  h.leftCols<4>().setIdentity();
  const Matrix8 i_kh = Matrix8::Identity() - gain * h;
  Matrix8 p_post = i_kh * p * i_kh.transpose() + gain * r_mat * gain.transpose();
  p_post = 0.5 * (p_post + p_post.transpose()).eval();

  result.estimate = FusedEstimate::from_state(x_post, p_post);
  result.accepted = true;
  return result;
}

}  // namespace rovnav
