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

#include "rovnav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <Eigen/LU>

namespace rovnav {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Along-edge position, speed and acceleration at time t of a trapezoidal
// (or triangular, for short edges) speed profile that starts and ends at rest.
struct ProfileSample {
  double position;
  double speed;
  double accel;
};

double profile_duration(double length, double cruise, double ramp) {
  const double accel = cruise / ramp;
  if (length >= cruise * ramp) {
    return length / cruise + ramp;
  }
  return 2.0 * std::sqrt(length / accel);
}

ProfileSample profile_at(double t, double length, double cruise, double ramp) {
  const double accel = cruise / ramp;
  const double total = profile_duration(length, cruise, ramp);
  t = std::clamp(t, 0.0, total);
  if (length >= cruise * ramp) {
    if (t < ramp) {
      return {0.5 * accel * t * t, accel * t, accel};
    }
    if (t < total - ramp) {
      return {cruise * (t - 0.5 * ramp), cruise, 0.0};
    }
    const double remaining = total - t;
    return {length - 0.5 * accel * remaining * remaining, accel * remaining, remaining > 0.0 ? -accel : 0.0};
  }
  const double peak = 0.5 * total;
  if (t < peak) {
    return {0.5 * accel * t * t, accel * t, accel};
  }
  const double remaining = total - t;
  return {length - 0.5 * accel * remaining * remaining, accel * remaining, remaining > 0.0 ? -accel : 0.0};
}

}  // namespace

double BoundaryPolygon::signed_area() const {
  double twice_area = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    twice_area += cross2(vertex(i), vertex(i + 1));
  }
  return 0.5 * twice_area;
}

double BoundaryPolygon::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    total += edge(i).norm();
  }
  return total;
}

bool BoundaryPolygon::is_convex() const {
  if (vertices.size() < 3) {
    return false;
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (cross2(edge(i), edge(i + 1)) <= 0.0) {
      return false;
    }
  }
  return true;
}

void BoundaryPolygon::validate() const {
  if (vertices.size() < 3) {
    throw std::invalid_argument("BoundaryPolygon: at least 3 vertices required");
  }
  for (const auto& v : vertices) {
    if (!v.allFinite()) {
      throw std::invalid_argument("BoundaryPolygon: non-finite vertex");
    }
  }
  if (!std::isfinite(depth)) {
    throw std::invalid_argument("BoundaryPolygon: non-finite depth");
  }
  if (signed_area() <= 0.0) {
    throw std::invalid_argument("BoundaryPolygon: vertices must be counterclockwise");
  }
  // Every left turn with positive area also rules out self-intersection.
  if (!is_convex()) {
    throw std::invalid_argument("BoundaryPolygon: only strictly convex boundaries are supported");
  }
}

Eigen::Vector2d outward_normal(const BoundaryPolygon& polygon, std::size_t edge) {
  const Eigen::Vector2d d = polygon.edge(edge).normalized();
  return {d.y(), -d.x()};
}

BoundaryPolygon offset_inward(const BoundaryPolygon& boundary, double margin) {
  boundary.validate();
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw std::invalid_argument("offset_inward: margin must be positive");
  }
  const std::size_t n = boundary.size();

  std::vector<Eigen::Vector2d> line_points(n);
  std::vector<Eigen::Vector2d> line_dirs(n);
  for (std::size_t i = 0; i < n; ++i) {
    line_dirs[i] = boundary.edge(i).normalized();
    line_points[i] = boundary.vertex(i) - margin * outward_normal(boundary, i);
  }

  BoundaryPolygon out;
  out.depth = boundary.depth;
  out.vertices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t prev = (k + n - 1) % n;
    // line_points[prev] + s * dir[prev] == line_points[k] + t * dir[k]
    Eigen::Matrix2d system;
    system.col(0) = line_dirs[prev];
    system.col(1) = -line_dirs[k];
    const Eigen::Vector2d params = system.partialPivLu().solve(line_points[k] - line_points[prev]);
    out.vertices[k] = line_points[prev] + params(0) * line_dirs[prev];
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double along = out.edge(i).dot(line_dirs[i]);
    if (!(along > 1e-12 * boundary.perimeter())) {
      throw MarginTooLarge(fmt::format("offset_inward: margin {} collapses edge {}", margin, i));
    }
  }
  if (out.signed_area() <= 0.0) {
    throw MarginTooLarge(fmt::format("offset_inward: margin {} inverts the polygon", margin));
  }
  return out;
}

Eigen::Vector2d InspectionPlan::edge_start(std::size_t i) const {
  const PlanarPose& w = waypoints[i % waypoints.size()];
  return {w.x, w.y};
}

Eigen::Vector2d InspectionPlan::edge_vector(std::size_t i) const {
  return edge_start(i + 1) - edge_start(i);
}

InspectionPlan build_plan(const BoundaryPolygon& boundary, double margin, double speed,
                          std::optional<Eigen::Vector2d> start) {
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw std::invalid_argument("build_plan: speed must be positive");
  }
  const BoundaryPolygon offset = offset_inward(boundary, margin);
  const std::size_t n = offset.size();

  std::size_t first = 0;
  if (start) {
    double best = (offset.vertex(0) - *start).squaredNorm();
    for (std::size_t i = 1; i < n; ++i) {
      const double d = (offset.vertex(i) - *start).squaredNorm();
      if (d < best) {
        best = d;
        first = i;
      }
    }
  }

  InspectionPlan plan;
  plan.speed = speed;
  plan.margin = margin;
  plan.offset_polygon.depth = offset.depth;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (first + k) % n;
    plan.offset_polygon.vertices.push_back(offset.vertex(i));
    const Eigen::Vector2d normal = outward_normal(offset, i);
    plan.waypoints.emplace_back(offset.vertex(i).x(), offset.vertex(i).y(), offset.depth,
                                std::atan2(normal.y(), normal.x()));
  }
  return plan;
}

void write_waypoints_csv(std::ostream& os, const InspectionPlan& plan) {
  os << "x,y,z,psi\n";
  for (const PlanarPose& w : plan.waypoints) {
    os << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g}\n", w.x + 0.0, w.y + 0.0, w.z + 0.0, w.psi + 0.0);
  }
}

std::string to_string(MissionMode mode) {
  switch (mode) {
    case MissionMode::transit_to_start:
      return "transit_to_start";
    case MissionMode::follow_edge:
      return "follow_edge";
    case MissionMode::corner_turn:
      return "corner_turn";
    case MissionMode::done:
      return "done";
  }
  return "unknown";
}

std::string MissionState::label() const {
  if (mode == MissionMode::follow_edge || mode == MissionMode::corner_turn) {
    return fmt::format("{}:{}", to_string(mode), edge);
  }
  return to_string(mode);
}

ReferencePoint reference_for(const MissionState& mission, const InspectionPlan& plan, const MissionConfig& config) {
  const std::size_t n = plan.edge_count();
  const double depth = plan.offset_polygon.depth;
  ReferencePoint ref;
  switch (mission.mode) {
    case MissionMode::transit_to_start:
      ref.eta_d = plan.waypoints.front();
      break;
    case MissionMode::follow_edge: {
      const Eigen::Vector2d dir = plan.edge_vector(mission.edge).normalized();
      const Eigen::Vector2d p = plan.edge_start(mission.edge) + mission.progress * dir;
      ref.eta_d = PlanarPose(p.x(), p.y(), depth, plan.heading(mission.edge));
      double speed = plan.speed;
      double accel = 0.0;
      if (config.smooth_reference) {
        const ProfileSample s =
            profile_at(mission.elapsed, plan.edge_length(mission.edge), plan.speed, config.ramp_time);
        speed = s.speed;
        accel = s.accel;
      }
      ref.eta_d_dot.head<2>() = speed * dir;
      ref.eta_d_ddot.head<2>() = accel * dir;
      break;
    }
    case MissionMode::corner_turn: {
      const Eigen::Vector2d p = plan.edge_start(mission.edge + 1);
      ref.eta_d = PlanarPose(p.x(), p.y(), depth, mission.yaw_ref);
      const double remaining = wrap_angle(plan.heading(mission.edge + 1) - mission.yaw_ref);
      if (remaining != 0.0) {
        ref.eta_d_dot(3) = std::copysign(config.yaw_rate, remaining);
      }
      break;
    }
    case MissionMode::done: {
      const Eigen::Vector2d p = plan.edge_start(n);
      ref.eta_d = PlanarPose(p.x(), p.y(), depth, plan.heading(n - 1));
      break;
    }
  }
  return ref;
}

AdvanceResult advance(const MissionState& mission, const InspectionPlan& plan, const MissionConfig& config,
                      const PlanarPose& current, double dt) {
  if (plan.edge_count() == 0) {
    throw std::invalid_argument("advance: empty plan");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("advance: dt must be positive");
  }
  const std::size_t n = plan.edge_count();
  MissionState s = mission;

  if (s.mode == MissionMode::transit_to_start) {
    const PlanarPose& first = plan.waypoints.front();
    const double distance = (current.position() - first.position()).norm();
    const double yaw_error = std::abs(wrap_angle(current.psi - first.psi));
    if (distance > config.accept_radius || yaw_error > config.accept_yaw) {
      return {s, reference_for(s, plan, config)};
    }
    s = MissionState{MissionMode::follow_edge, 0, 0.0, 0.0, first.psi};
  }

  switch (s.mode) {
    case MissionMode::follow_edge: {
      const double length = plan.edge_length(s.edge);
      s.elapsed += dt;
      bool finished = false;
      if (config.smooth_reference) {
        const double total = profile_duration(length, plan.speed, config.ramp_time);
        s.progress = profile_at(s.elapsed, length, plan.speed, config.ramp_time).position;
        finished = s.elapsed >= total;
      } else {
        s.progress += plan.speed * dt;
        finished = s.progress >= length;
      }
      if (finished) {
        s.progress = length;
        s.yaw_ref = plan.heading(s.edge);
        s.mode = s.edge + 1 == n ? MissionMode::done : MissionMode::corner_turn;
      }
      break;
    }
    case MissionMode::corner_turn: {
      const double target = plan.heading(s.edge + 1);
      const double remaining = wrap_angle(target - s.yaw_ref);
      const double max_step = config.yaw_rate * dt;
      if (std::abs(remaining) <= max_step) {
        s.yaw_ref = target;
      } else {
        s.yaw_ref = wrap_angle(s.yaw_ref + std::copysign(max_step, remaining));
      }
      if (s.yaw_ref == target && std::abs(wrap_angle(current.psi - target)) < config.turn_tolerance) {
        s = MissionState{MissionMode::follow_edge, s.edge + 1, 0.0, 0.0, target};
      }
      break;
    }
    case MissionMode::transit_to_start:
    case MissionMode::done:
      break;
  }
  return {s, reference_for(s, plan, config)};
}

}  // namespace rovnav
