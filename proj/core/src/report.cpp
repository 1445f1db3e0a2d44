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

#include <array>
#include <iterator>
#include <ostream>
#include <string>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rovnav/episode.hpp"

namespace rovnav {

namespace {

void append_pose(std::string& line, const PlanarPose& p) {
  fmt::format_to(std::back_inserter(line), ",{:.9g},{:.9g},{:.9g},{:.9g}", p.x, p.y, p.z, p.psi);
}

nlohmann::ordered_json axes_json(const Vector4& v) {
  return {{"x", v(0)}, {"y", v(1)}, {"z", v(2)}, {"psi", v(3)}};
}

}  // namespace

void write_episode_csv(std::ostream& os, const EpisodeResult& result) {
  os << "t,x,y,z,psi,x_hat,y_hat,z_hat,psi_hat,x_ref,y_ref,z_ref,psi_ref,fx,fy,fz,mz,mode,saturated\n";
  std::string line;
  for (const EpisodeSample& s : result.samples) {
    line.clear();
    fmt::format_to(std::back_inserter(line), "{:.9g}", s.t);
    append_pose(line, s.truth);
    append_pose(line, s.estimate);
    append_pose(line, s.reference);
    fmt::format_to(std::back_inserter(line), ",{:.9g},{:.9g},{:.9g},{:.9g},{},{}\n", s.wrench(0), s.wrench(1),
                   s.wrench(2), s.wrench(3), s.mission.label(), s.saturated ? 1 : 0);
    os << line;
  }
}

void write_episode_summary(std::ostream& os, const EpisodeResult& result) {
  nlohmann::ordered_json j;
  j["controller"] = std::string(to_string(result.controller));
  j["seed"] = result.seed;
  j["dt"] = result.dt;
  j["ticks"] = result.samples.size();
  j["simulated_seconds"] = result.samples.empty() ? 0.0 : result.samples.back().t + result.dt;
  j["completed"] = result.completed;
  j["mae"] = axes_json(result.mae);
  j["mae_estimate"] = axes_json(result.mae_estimate);
  j["saturation_fraction"] = result.saturation_fraction;
  j["tag_updates"] = result.tag_updates;
  j["rejected_updates"] = result.rejected_updates;
  os << j.dump(2) << '\n';
}

void write_comparison(std::ostream& os, const ComparisonReport& report) {
  const EpisodeResult& a = report.results[0];
  const EpisodeResult& b = report.results[1];
  const std::string name_a(to_string(a.controller));
  const std::string name_b(to_string(b.controller));
  auto winner = [&](int axis) -> std::string {
    const int w = report.winner[static_cast<std::size_t>(axis)];
    return w < 0 ? "tie" : (w == 0 ? name_a : name_b);
  };

  os << fmt::format("{:<10}{:>14}{:>14}{:>10}\n", "axis", name_a + " MAE", name_b + " MAE", "winner");
  const std::array<std::pair<int, const char*>, 3> headline{{{0, "x [m]"}, {2, "z [m]"}, {3, "yaw [rad]"}}};
  for (const auto& [axis, label] : headline) {
    os << fmt::format("{:<10}{:>14.6g}{:>14.6g}{:>10}\n", label, a.mae(axis), b.mae(axis), winner(axis));
  }
  os << fmt::format("constant-speed axis (not in headline): y [m] {:.6g} vs {:.6g}\n", a.mae(1), b.mae(1));
  os << fmt::format("completed: {}={} {}={}\n", name_a, a.completed ? "yes" : "no", name_b,
                    b.completed ? "yes" : "no");
  os << fmt::format("saturation fraction: {}={:.4f} {}={:.4f}\n", name_a, a.saturation_fraction, name_b,
                    b.saturation_fraction);
}

}  // namespace rovnav
