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

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "rovnav/localization.hpp"

namespace rovnav {

TagMap read_tag_map(std::istream& is) {
  TagMap map;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    int id = 0;
    if (!(fields >> id)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      throw std::runtime_error(fmt::format("tag map line {}: expected an integer id", line_no));
    }
    std::array<double, 12> flat{};
    for (double& value : flat) {
      if (!(fields >> value)) {
        throw std::runtime_error(fmt::format("tag map line {}: expected 12 transform values", line_no));
      }
    }
    std::string extra;
    if (fields >> extra) {
      throw std::runtime_error(fmt::format("tag map line {}: trailing field '{}'", line_no, extra));
    }
    try {
      map.add({id, RigidTransform::from_flat(flat)});
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(fmt::format("tag map line {}: {}", line_no, e.what()));
    }
  }
  return map;
}

TagMap load_tag_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open tag map " + path.string());
  }
  return read_tag_map(in);
}

void write_tag_map(std::ostream& os, const TagMap& map) {
  os << "# id r00 r01 r02 r10 r11 r12 r20 r21 r22 tx ty tz\n";
  for (const Tag& tag : map.tags()) {
    os << tag.id;
    for (double value : tag.map_to_tag.to_flat()) {
      // Adding zero folds -0 into 0 so files diff cleanly.
      os << ' ' << fmt::format("{:.17g}", value + 0.0);
    }
    os << '\n';
  }
}

}  // namespace rovnav
