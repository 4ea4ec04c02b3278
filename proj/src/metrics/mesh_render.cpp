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

#include "gbm/metrics.hpp"

namespace gbm {

namespace {

struct ScreenVertex {
  double x;
  double y;
  double inv_z;
};

double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

}  // namespace

MeshRender render_mesh(const TriangleMesh& mesh, const CameraModel& cam) {
  mesh.validate();
  cam.validate();
  MeshRender out{ImageRGB(cam.width, cam.height), BinaryMask(cam.width, cam.height)};
  std::vector<ScreenVertex> sv(mesh.vertices.size());
  std::vector<char> in_front(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Projection p = project(cam, mesh.vertices[v]);
    in_front[v] = p.z_cam > 1e-6;
    sv[v] = {p.u, p.v, in_front[v] ? 1.0 / p.z_cam : 0.0};
  }

  // Bucket triangles by the pixel rows their bounding box touches.
  std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(cam.height));
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    if (!in_front[tri[0]] || !in_front[tri[1]] || !in_front[tri[2]]) continue;
    const double y_lo = std::min({sv[tri[0]].y, sv[tri[1]].y, sv[tri[2]].y});
    const double y_hi = std::max({sv[tri[0]].y, sv[tri[1]].y, sv[tri[2]].y});
    const int r0 = std::max(0, static_cast<int>(std::ceil(y_lo - 0.5)));
    const int r1 = std::min(cam.height - 1, static_cast<int>(std::floor(y_hi - 0.5)));
    for (int r = r0; r <= r1; ++r) rows[r].push_back(static_cast<std::uint32_t>(t));
  }

  const Vec3 white(1.0, 1.0, 1.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int y = 0; y < cam.height; ++y) {
    std::vector<double> zbuf(static_cast<std::size_t>(cam.width), 0.0);  // stores 1/z; larger is nearer
    const double py = y + 0.5;
    for (std::uint32_t t : rows[y]) {
      const auto& tri = mesh.triangles[t];
      const ScreenVertex& a = sv[tri[0]];
      const ScreenVertex& b = sv[tri[1]];
      const ScreenVertex& c = sv[tri[2]];
      const double area = edge(a, b, c.x, c.y);
      if (area == 0.0) continue;
      const int x0 = std::max(0, static_cast<int>(std::ceil(std::min({a.x, b.x, c.x}) - 0.5)));
      const int x1 = std::min(cam.width - 1, static_cast<int>(std::floor(std::max({a.x, b.x, c.x}) - 0.5)));
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5;
        double w0 = edge(b, c, px, py) / area;
        double w1 = edge(c, a, px, py) / area;
        double w2 = edge(a, b, px, py) / area;
        if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
        const double inv_z = w0 * a.inv_z + w1 * b.inv_z + w2 * c.inv_z;
        if (inv_z <= zbuf[x]) continue;
        zbuf[x] = inv_z;
        const Vec3 ca = mesh.has_colors() ? mesh.colors[tri[0]] : white;
        const Vec3 cb = mesh.has_colors() ? mesh.colors[tri[1]] : white;
        const Vec3 cc = mesh.has_colors() ? mesh.colors[tri[2]] : white;
        const Vec3 col = (w0 * a.inv_z * ca + w1 * b.inv_z * cb + w2 * c.inv_z * cc) / inv_z;
        std::uint8_t* px_rgb = out.color.pixel(x, y);
        for (int k = 0; k < 3; ++k) {
          px_rgb[k] = static_cast<std::uint8_t>(std::lround(std::clamp(col[k], 0.0, 1.0) * 255.0));
        }
        out.coverage.set(x, y, true);
      }
    }
  }
  return out;
}

}  // namespace gbm
