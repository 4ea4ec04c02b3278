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

#include "gbm/maskops.hpp"

namespace gbm {

namespace {

constexpr double kEdgeTol = 1e-9;

void mark(BinaryMask& m, long x, long y) {
  if (x >= 0 && y >= 0 && x < m.width && y < m.height) m.set(static_cast<int>(x), static_cast<int>(y), true);
}

}  // namespace

BinaryMask fill_contour(const Contour& contour, int width, int height) {
  BinaryMask out(width, height);
  const auto& pts = contour.points;
  const std::size_t n = pts.size();
  if (!contour.closed) throw InvalidArgument("fill_contour: contour must be closed");
  if (n < 3 || std::abs(contour.signed_area()) < 1e-12) return out;

  std::vector<double> xs;
  for (int y = 0; y < height; ++y) {
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& p = pts[i];
      const Vec2& q = pts[(i + 1) % n];
      if (p.y() == q.y()) continue;
      const double lo = std::min(p.y(), q.y());
      const double hi = std::max(p.y(), q.y());
      if (y < lo || y >= hi) continue;  // half-open so shared vertices count once
      xs.push_back(p.x() + (y - p.y()) * (q.x() - p.x()) / (q.y() - p.y()));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const long x0 = std::max(0L, static_cast<long>(std::ceil(xs[k] - kEdgeTol)));
      const long x1 = std::min(static_cast<long>(width) - 1, static_cast<long>(std::floor(xs[k + 1] + kEdgeTol)));
      for (long x = x0; x <= x1; ++x) out.set(static_cast<int>(x), y, true);
    }
  }

  // Integer points lying exactly on an edge.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % n];
    if (p.y() == q.y()) {
      const double ry = std::round(p.y());
      if (std::abs(ry - p.y()) > kEdgeTol) continue;
      const long x0 = static_cast<long>(std::ceil(std::min(p.x(), q.x()) - kEdgeTol));
      const long x1 = static_cast<long>(std::floor(std::max(p.x(), q.x()) + kEdgeTol));
      for (long x = x0; x <= x1; ++x) mark(out, x, static_cast<long>(ry));
      continue;
    }
    const long y0 = static_cast<long>(std::ceil(std::min(p.y(), q.y()) - kEdgeTol));
    const long y1 = static_cast<long>(std::floor(std::max(p.y(), q.y()) + kEdgeTol));
    for (long y = y0; y <= y1; ++y) {
      const double x = p.x() + (y - p.y()) * (q.x() - p.x()) / (q.y() - p.y());
      const double rx = std::round(x);
      if (std::abs(rx - x) <= kEdgeTol) mark(out, static_cast<long>(rx), y);
    }
  }
  return out;
}

}  // namespace gbm
