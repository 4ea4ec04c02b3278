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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gbm/geometry.hpp"
#include "gbm/image.hpp"

namespace gbm {

struct GridDims {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  std::size_t count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  bool operator==(const GridDims&) const = default;
};

struct Aabb {
  Vec3 min;
  Vec3 max;
};

/// Dense voxel grid of truncated signed distance. Voxel (i, j, k) spans
/// origin + [i, i+1) * voxel_size (per axis); samples live at voxel centers.
/// tsdf is normalized by the truncation band, so it stays in [-1, 1];
/// unobserved voxels have weight 0 and tsdf 1.
class TsdfVolume {
 public:
  static constexpr std::size_t kDefaultMaxVoxels = std::size_t{512} * 512 * 512;

  TsdfVolume(const Vec3& origin, double voxel_size, GridDims dims,
             std::size_t max_voxels = kDefaultMaxVoxels);

  const Vec3& origin() const { return origin_; }
  double voxel_size() const { return voxel_size_; }
  const GridDims& dims() const { return dims_; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims_.ny + j) * dims_.nx + i;
  }
  Vec3 voxel_center(int i, int j, int k) const {
    return origin_ + voxel_size_ * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }

  float tsdf(int i, int j, int k) const { return tsdf_[index(i, j, k)]; }
  float weight(int i, int j, int k) const { return weight_[index(i, j, k)]; }
  Vec3 color(int i, int j, int k) const;

  std::vector<float>& tsdf_data() { return tsdf_; }
  std::vector<float>& weight_data() { return weight_; }
  std::vector<std::array<float, 3>>& color_data() { return color_; }
  std::vector<float>& color_weight_data() { return color_weight_; }
  const std::vector<float>& tsdf_data() const { return tsdf_; }
  const std::vector<float>& weight_data() const { return weight_; }
  const std::vector<std::array<float, 3>>& color_data() const { return color_; }
  const std::vector<float>& color_weight_data() const { return color_weight_; }

  std::size_t observed_count() const;
  bool operator==(const TsdfVolume&) const = default;

 private:
  Vec3 origin_;
  double voxel_size_;
  GridDims dims_;
  std::vector<float> tsdf_;
  std::vector<float> weight_;
  std::vector<std::array<float, 3>> color_;  // running mean in [0,1]
  std::vector<float> color_weight_;          // samples inside the truncation band
};

struct FusionParams {
  double voxel_size = 0.0;  // <= 0: derive from bounds so the longest edge gets `auto_resolution` voxels
  double truncation = 0.0;  // <= 0: 4 * voxel_size
  double max_depth = 1e4;
  bool use_mask = true;
  int auto_resolution = 256;
  std::size_t max_voxels = TsdfVolume::kDefaultMaxVoxels;

  double effective_truncation(double voxel) const { return truncation > 0.0 ? truncation : 4.0 * voxel; }
  void validate() const;
};

struct Frame {
  DepthMap depth;
  ImageRGB color;
  BinaryMask mask;
  CameraModel camera;
};

/// Projective TSDF update with one frame. Voxels behind the camera, off-image,
/// on invalid/out-of-range/out-of-mask pixels, or more than one truncation
/// band behind the observed surface are left alone.
void integrate(TsdfVolume& volume, const Frame& frame, const FusionParams& params);

/// Bounding box of all valid (and, with use_mask, in-mask) back-projected
/// depth samples, padded by 5% of its extent plus the truncation distance.
Aabb fusion_bounds(const std::vector<Frame>& frames, const FusionParams& params);

/// Allocates a grid covering `bounds` (derived from the frames when absent) and
/// integrates every frame in order.
TsdfVolume integrate_sequence(const std::vector<Frame>& frames, const FusionParams& params,
                              const std::optional<Aabb>& bounds = std::nullopt);

/// Surface at tsdf = 0 over cubes whose 8 corner voxels are all observed.
/// Corners with tsdf < 0 are inside; normals face toward positive tsdf.
TriangleMesh marching_cubes(const TsdfVolume& volume);

namespace mc {

/// Corner c of a cube sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
/// Edge e joins corners kEdgeCorners[e][0] and kEdgeCorners[e][1].
extern const std::array<std::array<int, 2>, 12> kEdgeCorners;

/// Triangles (as cube-edge triples) for each of the 256 inside/outside cases;
/// bit c of the case index is set when corner c is inside.
const std::vector<std::array<int, 3>>& case_triangles(int cube_case);

}  // namespace mc

namespace serial {

void integrate(TsdfVolume& volume, const Frame& frame, const FusionParams& params);

}  // namespace serial

}  // namespace gbm
