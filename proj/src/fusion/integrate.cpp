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

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbm/fusion.hpp"

namespace gbm {

void FusionParams::validate() const {
  if (!(max_depth > 0.0)) throw InvalidArgument("FusionParams: max_depth must be > 0");
  if (voxel_size > 0.0 && truncation > 0.0 && truncation < voxel_size) {
    throw InvalidArgument("FusionParams: truncation must be >= voxel_size");
  }
  if (voxel_size <= 0.0 && auto_resolution < 2) throw InvalidArgument("FusionParams: auto_resolution must be >= 2");
}

namespace {

void check_frame(const Frame& f, const FusionParams& params) {
  f.camera.validate();
  f.depth.validate();
  const auto& cam = f.camera;
  require_same_size(f.depth.width, f.depth.height, cam.width, cam.height, "integrate: depth vs camera");
  if (!f.color.data.empty()) {
    require_same_size(f.color.width, f.color.height, cam.width, cam.height, "integrate: color vs camera");
  }
  if (params.use_mask) {
    if (f.mask.bits.empty()) throw InvalidArgument("integrate: use_mask set but frame has no mask");
    require_same_size(f.mask.width, f.mask.height, cam.width, cam.height, "integrate: mask vs camera");
  }
}

struct VoxelUpdate {
  float& tsdf;
  float& weight;
  std::array<float, 3>& color;
  float& color_weight;
};

// Shared per-voxel rule; `p_cam` is the voxel center in camera coordinates.
inline void update_voxel(const Frame& f, const FusionParams& params, double trunc, const Vec3& p_cam,
                         VoxelUpdate v) {
  const auto& cam = f.camera;
  const double z = p_cam.z();
  if (!(z > 0.0)) return;
  const double u = cam.fx * p_cam.x() / z + cam.cx;
  const double w = cam.fy * p_cam.y() / z + cam.cy;
  if (!(u >= 0.0 && w >= 0.0 && u < cam.width && w < cam.height)) return;
  const int px = static_cast<int>(u);
  const int py = static_cast<int>(w);
  if (params.use_mask && !f.mask(px, py)) return;
  const double d = f.depth.at(px, py);
  if (!DepthMap::is_valid(d) || d > params.max_depth) return;
  const double sdf = d - z;
  if (sdf < -trunc) return;
  const double obs = std::clamp(sdf / trunc, -1.0, 1.0);
  const float wt = v.weight;
  v.tsdf = static_cast<float>((v.tsdf * wt + obs) / (wt + 1.0));
  v.weight = wt + 1.0f;
  if (std::abs(sdf) <= trunc && !f.color.data.empty()) {
    const std::uint8_t* rgb = f.color.pixel(px, py);
    const float cw = v.color_weight;
    for (int c = 0; c < 3; ++c) {
      v.color[c] = static_cast<float>((v.color[c] * cw + rgb[c] / 255.0) / (cw + 1.0));
    }
    v.color_weight = cw + 1.0f;
  }
}

}  // namespace

void integrate(TsdfVolume& volume, const Frame& frame, const FusionParams& params) {
  params.validate();
  check_frame(frame, params);
  const double trunc = params.effective_truncation(volume.voxel_size());
  if (trunc < volume.voxel_size()) throw InvalidArgument("integrate: truncation must be >= voxel_size");
  const GridDims dims = volume.dims();
  auto& tsdf = volume.tsdf_data();
  auto& weight = volume.weight_data();
  auto& color = volume.color_data();
  auto& color_weight = volume.color_weight_data();

#pragma omp parallel for collapse(2) schedule(static)
  for (int k = 0; k < dims.nz; ++k) {
    for (int j = 0; j < dims.ny; ++j) {
      for (int i = 0; i < dims.nx; ++i) {
        const std::size_t idx = volume.index(i, j, k);
        update_voxel(frame, params, trunc, frame.camera.to_camera(volume.voxel_center(i, j, k)),
                     {tsdf[idx], weight[idx], color[idx], color_weight[idx]});
      }
    }
  }
}

namespace serial {

void integrate(TsdfVolume& volume, const Frame& frame, const FusionParams& params) {
  params.validate();
  check_frame(frame, params);
  const double trunc = params.effective_truncation(volume.voxel_size());
  if (trunc < volume.voxel_size()) throw InvalidArgument("integrate: truncation must be >= voxel_size");
  const GridDims dims = volume.dims();
  for (int k = 0; k < dims.nz; ++k) {
    for (int j = 0; j < dims.ny; ++j) {
      for (int i = 0; i < dims.nx; ++i) {
        const std::size_t idx = volume.index(i, j, k);
        const Vec3 p_cam = frame.camera.to_camera(volume.voxel_center(i, j, k));
        update_voxel(frame, params, trunc, p_cam,
                     {volume.tsdf_data()[idx], volume.weight_data()[idx], volume.color_data()[idx],
                      volume.color_weight_data()[idx]});
      }
    }
  }
}

}  // namespace serial

Aabb fusion_bounds(const std::vector<Frame>& frames, const FusionParams& params) {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  bool any = false;
  for (const Frame& f : frames) {
    check_frame(f, params);
    for (int v = 0; v < f.depth.height; ++v) {
      for (int u = 0; u < f.depth.width; ++u) {
        const double d = f.depth.at(u, v);
        if (!DepthMap::is_valid(d) || d > params.max_depth) continue;
        if (params.use_mask && !f.mask(u, v)) continue;
        const Vec3 p = back_project(f.camera, u, v, d);
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
        any = true;
      }
    }
  }
  if (!any) throw InvalidArgument("fusion_bounds: no valid depth samples");
  const double voxel = params.voxel_size > 0.0 ? params.voxel_size : (hi - lo).maxCoeff() / params.auto_resolution;
  const double trunc = params.truncation > 0.0 ? params.truncation : 4.0 * std::max(voxel, 1e-9);
  const Vec3 pad = 0.05 * (hi - lo) + Vec3::Constant(trunc);
  return {lo - pad, hi + pad};
}

TsdfVolume integrate_sequence(const std::vector<Frame>& frames, const FusionParams& params,
                              const std::optional<Aabb>& bounds) {
  params.validate();
  if (frames.empty()) throw InvalidArgument("integrate_sequence: no frames");
  const int w = frames.front().camera.width;
  const int h = frames.front().camera.height;
  for (const Frame& f : frames) {
    require_same_size(f.camera.width, f.camera.height, w, h, "integrate_sequence: camera dims");
  }
  const Aabb box = bounds ? *bounds : fusion_bounds(frames, params);
  const Vec3 extent = box.max - box.min;
  if (!(extent.minCoeff() > 0.0)) throw InvalidArgument("integrate_sequence: empty bounds");

  double voxel = params.voxel_size;
  if (voxel <= 0.0) {
    voxel = extent.maxCoeff() / params.auto_resolution;
    // Coarsen until the grid fits under the cap.
    auto fits = [&](double vs) {
      const double n = std::ceil(extent.x() / vs) * std::ceil(extent.y() / vs) * std::ceil(extent.z() / vs);
      return n <= static_cast<double>(params.max_voxels);
    };
    while (!fits(voxel)) voxel *= 1.05;
  }
  const GridDims dims{static_cast<int>(std::ceil(extent.x() / voxel)), static_cast<int>(std::ceil(extent.y() / voxel)),
                      static_cast<int>(std::ceil(extent.z() / voxel))};
  TsdfVolume volume(box.min, voxel, dims, params.max_voxels);
  FusionParams p = params;
  p.voxel_size = voxel;
  for (const Frame& f : frames) integrate(volume, f, p);
  return volume;
}

}  // namespace gbm
