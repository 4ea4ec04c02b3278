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

#include "gbm/fusion.hpp"

namespace gbm {

TsdfVolume::TsdfVolume(const Vec3& origin, double voxel_size, GridDims dims, std::size_t max_voxels)
    : origin_(origin), voxel_size_(voxel_size), dims_(dims) {
  if (!(voxel_size > 0.0)) throw InvalidArgument("TsdfVolume: voxel_size must be > 0");
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) throw InvalidArgument("TsdfVolume: empty grid");
  if (dims.count() > max_voxels) {
    throw InvalidArgument("TsdfVolume: " + std::to_string(dims.count()) + " voxels exceeds the cap of " +
                          std::to_string(max_voxels));
  }
  if (!origin.allFinite()) throw InvalidArgument("TsdfVolume: non-finite origin");
  tsdf_.assign(dims.count(), 1.0f);
  weight_.assign(dims.count(), 0.0f);
  color_.assign(dims.count(), {0.0f, 0.0f, 0.0f});
  color_weight_.assign(dims.count(), 0.0f);
}

Vec3 TsdfVolume::color(int i, int j, int k) const {
  const auto& c = color_[index(i, j, k)];
  return Vec3(c[0], c[1], c[2]);
}

std::size_t TsdfVolume::observed_count() const {
  return static_cast<std::size_t>(std::count_if(weight_.begin(), weight_.end(), [](float w) { return w > 0.0f; }));
}

}  // namespace gbm
