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

#pragma once

#include <filesystem>
#include <vector>

#include "gbm/geometry.hpp"
#include "gbm/image.hpp"

namespace gbm::io {

namespace fs = std::filesystem;

// 8-bit grayscale PNG; gray > 127 is foreground. Color PNGs are converted to gray on load.
BinaryMask load_mask_png(const fs::path& path);
void save_mask_png(const fs::path& path, const BinaryMask& mask);

ImageRGB load_rgb_png(const fs::path& path);
void save_rgb_png(const fs::path& path, const ImageRGB& image);

// Grayscale PFM ("Pf"); negative scale means little-endian payload.
// Bottom-to-top row order per the format; invalid depth is written as 0.
DepthMap load_pfm(const fs::path& path);
DepthMap parse_pfm(const std::vector<unsigned char>& bytes);
void save_pfm(const fs::path& path, const DepthMap& depth);

// Binary little-endian PLY: x y z float, red green blue uchar (when colored),
// face list uchar int vertex_indices.
TriangleMesh load_ply(const fs::path& path);
TriangleMesh parse_ply(const std::vector<unsigned char>& bytes);
void save_ply(const fs::path& path, const TriangleMesh& mesh);

// JSON array of {"frame", "fx", "fy", "cx", "cy", "width", "height",
// "world_from_camera": 16 row-major numbers}.
struct FramedCamera {
  int frame = 0;
  CameraModel camera;
};
std::vector<FramedCamera> load_cameras_json(const fs::path& path);
void save_cameras_json(const fs::path& path, const std::vector<FramedCamera>& cameras);

std::vector<unsigned char> read_file(const fs::path& path);
void write_file(const fs::path& path, const std::vector<unsigned char>& bytes);

}  // namespace gbm::io
