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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rovnav/controllers.hpp"

namespace rovnav {

/// Closed net boundary in the horizontal plane, counterclockwise in (x, y),
/// at a constant inspection depth.
struct BoundaryPolygon {
  std::vector<Eigen::Vector2d> vertices;
  double depth = 0.0;

  std::size_t size() const { return vertices.size(); }
  const Eigen::Vector2d& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
  Eigen::Vector2d edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }

  double signed_area() const;
  double perimeter() const;
  bool is_convex() const;

  /// Throws std::invalid_argument unless the polygon has >= 3 vertices,
  /// is counterclockwise and strictly convex (hence simple).
  void validate() const;
};

/// Raised when an inward offset collapses or inverts an edge.
class MarginTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Translates every edge inward by `margin` and intersects neighbouring
/// offset edges. Convex input only.
BoundaryPolygon offset_inward(const BoundaryPolygon& boundary, double margin);

/// Outward unit normal of edge i of a counterclockwise polygon.
Eigen::Vector2d outward_normal(const BoundaryPolygon& polygon, std::size_t edge);

struct InspectionPlan {
  BoundaryPolygon offset_polygon;  // vertices in traversal order
  std::vector<PlanarPose> waypoints;
  double speed = 0.0;
  double margin = 0.0;

  std::size_t edge_count() const { return waypoints.size(); }
  /// Edge i runs from waypoint i to waypoint (i + 1) mod n.
  Eigen::Vector2d edge_start(std::size_t i) const;
  Eigen::Vector2d edge_vector(std::size_t i) const;
  double edge_length(std::size_t i) const { return edge_vector(i).norm(); }
  double heading(std::size_t i) const { return waypoints[i % waypoints.size()].psi; }
};

/// Offsets the boundary and orders the offset vertices starting from the one
/// closest to `start` (or vertex 0). Waypoint yaw faces the net, i.e. it is
/// the heading of the outward normal of the edge leaving the waypoint.
InspectionPlan build_plan(const BoundaryPolygon& boundary, double margin, double speed,
                          std::optional<Eigen::Vector2d> start = std::nullopt);

/// Waypoint CSV: header `x,y,z,psi`, one row per waypoint.
void write_waypoints_csv(std::ostream& os, const InspectionPlan& plan);

enum class MissionMode { transit_to_start, follow_edge, corner_turn, done };

std::string to_string(MissionMode mode);

struct MissionState {
  MissionMode mode = MissionMode::transit_to_start;
  std::size_t edge = 0;
  double progress = 0.0;    // metres along the current edge
  double elapsed = 0.0;     // seconds spent on the current edge
  double yaw_ref = 0.0;     // slewing yaw reference during a corner turn

  std::string label() const;
};

struct MissionConfig {
  double yaw_rate = 0.2;            // rad/s corner slew
  double accept_radius = 0.05;      // m, transit acceptance
  double accept_yaw = 0.05;         // rad, transit acceptance
  double turn_tolerance = 0.02;     // rad, vehicle yaw error closing a turn
  bool smooth_reference = false;    // trapezoidal speed ramps on each edge
  double ramp_time = 0.5;           // s
};

struct AdvanceResult {
  MissionState state;
  ReferencePoint reference;
};

/// One planner tick. Pure function of its arguments.
///
/// transit_to_start holds the first waypoint until `current` is inside the
/// acceptance window; follow_edge moves the reference along the edge at the
/// plan speed; corner_turn holds position and slews yaw to the next heading,
/// closing once the slew is complete and the vehicle yaw is within
/// `turn_tolerance`; the last edge ends in done, which freezes the reference.
AdvanceResult advance(const MissionState& mission, const InspectionPlan& plan, const MissionConfig& config,
                      const PlanarPose& current, double dt);

/// Reference for a mission state without advancing time.
ReferencePoint reference_for(const MissionState& mission, const InspectionPlan& plan, const MissionConfig& config);

}  // namespace rovnav
