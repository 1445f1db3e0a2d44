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

#include <filesystem>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <vector>

#include "rovnav/dynamics.hpp"
#include "rovnav/se3.hpp"

namespace rovnav {

// Tag frame convention: the tag z-axis leaves the tag plane towards the
// volume the tag can be seen from. Camera frame: z along the optical axis,
// x right, y down.

struct Tag {
  int id = 0;
  RigidTransform map_to_tag;  // pose of the tag in the map
};

class UnknownTag : public std::out_of_range {
 public:
  explicit UnknownTag(int id);
  int id() const { return id_; }

 private:
  int id_;
};

/// Static tag map kept sorted by id.
class TagMap {
 public:
  TagMap() = default;
  explicit TagMap(std::vector<Tag> tags);

  /// Throws std::invalid_argument on a duplicate id.
  void add(Tag tag);
  const RigidTransform* find(int id) const;
  const RigidTransform& at(int id) const;  // throws UnknownTag
  const std::vector<Tag>& tags() const { return tags_; }
  std::size_t size() const { return tags_.size(); }
  bool empty() const { return tags_.empty(); }

 private:
  std::vector<Tag> tags_;
};

/// Text format: one tag per line, `id` followed by the 12-number flat
/// transform (rotation row-major, then translation). `#` starts a comment.
TagMap read_tag_map(std::istream& is);
TagMap load_tag_map(const std::filesystem::path& path);
void write_tag_map(std::ostream& os, const TagMap& map);

struct TagObservation {
  int id = 0;
  RigidTransform camera_from_tag;  // pose of the tag in the camera frame
  double timestamp = 0.0;
};

struct TagNoise {
  double sigma_translation = 0.0;  // m, per axis
  double sigma_rotation = 0.0;     // rad, about a uniformly random axis
};

/// Synthetic detector. Emits every tag that lies in front of the camera
/// within `fov_half_angle` of the optical axis and `range` metres, and
/// faces the camera, in increasing id order.
std::vector<TagObservation> observe_tags(const RigidTransform& true_pose, const TagMap& map,
                                         const RigidTransform& camera_to_rig, const TagNoise& noise,
                                         double fov_half_angle, double range, double timestamp,
                                         std::mt19937_64& rng);

/// T_map_rig = T_map_tag * (T_camera_tag)^-1 * T_camera_rig.
RigidTransform pose_from_tag(const TagObservation& obs, const TagMap& map, const RigidTransform& camera_to_rig);

/// Camera looking along the body x axis (forward) mounted at `offset` in the
/// rig frame; returns T_camera_rig.
RigidTransform forward_camera_to_rig(const Eigen::Vector3d& offset);

/// Eight-state filter over [eta; nu].
struct FusedEstimate {
  PlanarPose eta_hat;
  BodyVelocity nu_hat;
  Matrix8 covariance = Matrix8::Identity();

  Vector8 state() const;
  static FusedEstimate from_state(const Vector8& x, const Matrix8& covariance);
};

/// Standard deviation of the body-frame acceleration input noise, applied
/// per prediction interval.
struct ProcessNoise {
  Vector4 accel_sigma = Vector4::Zero();
};

struct MeasurementNoise {
  Vector4 sigma = Vector4::Zero();  // x, y, z (m), psi (rad)
};

/// chi-square 0.99 quantile, 4 degrees of freedom.
inline constexpr double kInnovationGate = 13.28;

/// Propagation x+ = f(x, a, dt) of the constant-acceleration model:
/// eta += J(psi) (nu dt + a dt^2 / 2), nu += a dt.
Vector8 ekf_propagate(const Vector8& x, const Vector4& accel, double dt);

/// df/dx of ekf_propagate.
Matrix8 ekf_transition_jacobian(const Vector8& x, const Vector4& accel, double dt);

/// Q = G diag(sigma^2) G^T with G = d f / d a.
Matrix8 ekf_process_covariance(const Vector8& x, const ProcessNoise& q, double dt);

FusedEstimate ekf_predict(const FusedEstimate& est, const Vector4& imu_accel, double dt, const ProcessNoise& q);

struct UpdateResult {
  FusedEstimate estimate;
  bool accepted = false;
  double mahalanobis_sq = 0.0;
  Vector4 innovation = Vector4::Zero();
};

/// Kalman update on the four pose components with a wrapped yaw
/// innovation and Joseph-form covariance. Measurements whose squared
/// Mahalanobis distance exceeds kInnovationGate leave the estimate unchanged
/// and report accepted = false.
UpdateResult ekf_update(const FusedEstimate& est, const PlanarPose& measured, const MeasurementNoise& r);

}  // namespace rovnav
