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

#include <cmath>
#include <vector>

#include "gbm/depthops.hpp"

namespace gbm {

int SmoothParams::effective_radius() const {
  return kernel_radius > 0 ? kernel_radius : static_cast<int>(std::ceil(3.0 * sigma));
}

void SmoothParams::validate() const {
  if (!(sigma > 0.0)) throw InvalidArgument("SmoothParams: sigma must be > 0");
  if (effective_radius() < 1) throw InvalidArgument("SmoothParams: kernel radius must be >= 1");
  if (!(max_depth > 0.0)) throw InvalidArgument("SmoothParams: max_depth must be > 0");
}

DepthMap clamp_range(const DepthMap& depth, double max_depth) {
  if (!(max_depth > 0.0)) throw InvalidArgument("clamp_range: max_depth must be > 0");
  depth.validate();
  DepthMap out = depth;
  for (double& d : out.depth) {
    if (!DepthMap::is_valid(d) || d > max_depth) d = DepthMap::kInvalid;
  }
  return out;
}

namespace {

std::vector<double> gaussian_weights(double sigma, int radius) {
  const int side = 2 * radius + 1;
  std::vector<double> w(static_cast<std::size_t>(side) * side);
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      w[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
  return w;
}

// One output pixel; window summed in row-major order.
double smooth_pixel(const DepthMap& in, const BinaryMask& mask, const std::vector<double>& w, int radius,
                    int x, int y) {
  const int side = 2 * radius + 1;
  double num = 0.0;
  double den = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    const int yy = y + dy;
    if (yy < 0 || yy >= in.height) continue;
    for (int dx = -radius; dx <= radius; ++dx) {
      const int xx = x + dx;
      if (xx < 0 || xx >= in.width || !mask(xx, yy)) continue;
      const double d = in.at(xx, yy);
      if (!DepthMap::is_valid(d)) continue;
      const double wk = w[static_cast<std::size_t>(dy + radius) * side + (dx + radius)];
      num += wk * d;
      den += wk;
    }
  }
  return den > 0.0 ? num / den : DepthMap::kInvalid;
}

}  // namespace

DepthMap smooth_depth(const DepthMap& depth, const BinaryMask& mask, const SmoothParams& params) {
  params.validate();
  depth.validate();
  mask.validate();
  require_same_size(depth.width, depth.height, mask.width, mask.height, "smooth_depth");
  const DepthMap in = clamp_range(depth, params.max_depth);
  const int radius = params.effective_radius();
  const auto w = gaussian_weights(params.sigma, radius);
  DepthMap out(in.width, in.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      if (mask(x, y)) out.at(x, y) = smooth_pixel(in, mask, w, radius, x, y);
    }
  }
  return out;
}

namespace serial {

DepthMap smooth_depth(const DepthMap& depth, const BinaryMask& mask, const SmoothParams& params) {
  params.validate();
  depth.validate();
  mask.validate();
  require_same_size(depth.width, depth.height, mask.width, mask.height, "smooth_depth");
  const DepthMap in = clamp_range(depth, params.max_depth);
  const int radius = params.effective_radius();
  const auto w = gaussian_weights(params.sigma, radius);
  DepthMap out(in.width, in.height);
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x)
      if (mask(x, y)) out.at(x, y) = smooth_pixel(in, mask, w, radius, x, y);
  return out;
}

}  // namespace serial

}  // namespace gbm
