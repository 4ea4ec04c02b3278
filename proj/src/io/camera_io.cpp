// Copyright 2026 The gbm Authors.
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

#include <json.hpp>

#include "gbm/io.hpp"

namespace gbm::io {

using nlohmann::json;

std::vector<FramedCamera> load_cameras_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
  if (!doc.is_array()) throw ParseError(path.string() + ": expected a JSON array of cameras");
  std::vector<FramedCamera> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& c = doc[i];
    const std::string where = path.string() + ": camera " + std::to_string(i);
    try {
      FramedCamera fc;
      fc.frame = c.at("frame").get<int>();
      fc.camera.fx = c.at("fx").get<double>();
      fc.camera.fy = c.at("fy").get<double>();
      fc.camera.cx = c.at("cx").get<double>();
      fc.camera.cy = c.at("cy").get<double>();
      fc.camera.width = c.at("width").get<int>();
      fc.camera.height = c.at("height").get<int>();
      const auto& m = c.at("world_from_camera");
      if (!m.is_array() || m.size() != 16) throw ParseError(where + ": world_from_camera needs 16 numbers");
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) fc.camera.world_from_camera(r, k) = m[4 * r + k].get<double>();
      fc.camera.validate();
      out.push_back(fc);
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return out;
}

void save_cameras_json(const fs::path& path, const std::vector<FramedCamera>& cameras) {
  json doc = json::array();
  for (const auto& fc : cameras) {
    const CameraModel& c = fc.camera;
    json m = json::array();
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k) m.push_back(c.world_from_camera(r, k));
    doc.push_back({{"frame", fc.frame}, {"fx", c.fx}, {"fy", c.fy}, {"cx", c.cx}, {"cy", c.cy},
                   {"width", c.width}, {"height", c.height}, {"world_from_camera", m}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

}  // namespace gbm::io
