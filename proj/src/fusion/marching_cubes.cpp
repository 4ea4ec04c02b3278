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
#include <stdexcept>
#include <unordered_map>

#include "gbm/fusion.hpp"

namespace gbm {

namespace mc {

const std::array<std::array<int, 2>, 12> kEdgeCorners{{
    {0, 1}, {2, 3}, {4, 5}, {6, 7},  // along x
    {0, 2}, {1, 3}, {4, 6}, {5, 7},  // along y
    {0, 4}, {1, 5}, {2, 6}, {3, 7},  // along z
}};

namespace {

// Face corners, counter-clockwise when seen from outside the cube.
constexpr std::array<std::array<int, 4>, 6> kFaces{{
    {0, 4, 6, 2}, {1, 3, 7, 5}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 2, 3, 1}, {4, 5, 7, 6}}};

int edge_between(int a, int b) {
  for (int e = 0; e < 12; ++e) {
    if ((kEdgeCorners[e][0] == a && kEdgeCorners[e][1] == b) || (kEdgeCorners[e][0] == b && kEdgeCorners[e][1] == a))
      return e;
  }
  return -1;
}

bool share_face(int e0, int e1) {
  for (const auto& face : kFaces) {
    int hits = 0;
    for (int e : {e0, e1}) {
      const auto [a, b] = kEdgeCorners[e];
      hits += std::count(face.begin(), face.end(), a) + std::count(face.begin(), face.end(), b) == 2;
    }
    if (hits == 2) return true;
  }
  return false;
}

// Triangulates a loop of cube edges without diagonals between two crossings on
// one face; such a diagonal would lie in the face and clash with the
// neighbouring cube. Interval DP over the polygon, lowest split index first.
void triangulate_loop(const std::vector<int>& loop, std::vector<std::array<int, 3>>& tris) {
  const int n = static_cast<int>(loop.size());
  if (n < 3) return;
  auto chord_ok = [&](int i, int j) { return j - i == 1 || (i == 0 && j == n - 1) || !share_face(loop[i], loop[j]); };
  std::vector<int> split(n * n, -1);
  std::vector<char> ok(n * n, 0);
  for (int i = 0; i + 1 < n; ++i) ok[i * n + i + 1] = 1;
  for (int len = 2; len < n; ++len) {
    for (int i = 0; i + len < n; ++i) {
      const int j = i + len;
      if (!chord_ok(i, j)) continue;
      for (int k = i + 1; k < j; ++k) {
        if (ok[i * n + k] && ok[k * n + j]) {
          ok[i * n + j] = 1;
          split[i * n + j] = k;
          break;
        }
      }
    }
  }
  if (!ok[n - 1]) throw std::logic_error("marching cubes: no face-safe triangulation");
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    const int k = split[i * n + j];
    tris.push_back({loop[i], loop[k], loop[j]});
    stack.push_back({i, k});
    stack.push_back({k, j});
  }
}

// On every face, each run of inside corners (walking the face boundary) is
// cut off by one iso-segment from its entry crossing to its exit crossing.
// Ambiguous faces therefore keep diagonal inside corners apart, the same
// choice on both cubes sharing the face. Chaining segments gives closed
// loops, which are fan-triangulated.
std::vector<std::array<int, 3>> build_case(int cube_case) {
  auto inside = [cube_case](int c) { return (cube_case >> c) & 1; };
  std::array<int, 12> next;
  next.fill(-1);
  for (const auto& face : kFaces) {
    int first_entry_pos = -1;
    std::vector<std::pair<int, bool>> crossings;  // (edge, is_entry) in walk order
    for (int i = 0; i < 4; ++i) {
      const int a = face[i];
      const int b = face[(i + 1) % 4];
      if (inside(a) == inside(b)) continue;
      crossings.push_back({edge_between(a, b), !inside(a)});
    }
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      if (crossings[i].second && first_entry_pos < 0) first_entry_pos = static_cast<int>(i);
    }
    if (crossings.empty()) continue;
    const std::size_t n = crossings.size();
    for (std::size_t s = 0; s < n; ++s) {
      const auto [edge, is_entry] = crossings[(first_entry_pos + s) % n];
      if (!is_entry) continue;
      const int exit_edge = crossings[(first_entry_pos + s + 1) % n].first;
      next[edge] = exit_edge;
    }
  }

  std::vector<std::array<int, 3>> tris;
  std::array<bool, 12> used{};
  for (int start = 0; start < 12; ++start) {
    if (next[start] < 0 || used[start]) continue;
    std::vector<int> loop;
    for (int e = start; !used[e]; e = next[e]) {
      used[e] = true;
      loop.push_back(e);
    }
    triangulate_loop(loop, tris);
  }
  return tris;
}

std::array<std::vector<std::array<int, 3>>, 256> build_table() {
  std::array<std::vector<std::array<int, 3>>, 256> table;
  for (int c = 0; c < 256; ++c) table[c] = build_case(c);
  return table;
}

}  // namespace

const std::vector<std::array<int, 3>>& case_triangles(int cube_case) {
  static const auto table = build_table();
  return table.at(static_cast<std::size_t>(cube_case));
}

}  // namespace mc

TriangleMesh marching_cubes(const TsdfVolume& volume) {
  const GridDims d = volume.dims();
  TriangleMesh mesh;
  if (d.nx < 2 || d.ny < 2 || d.nz < 2) return mesh;
  std::unordered_map<std::uint64_t, std::int32_t> edge_vertex;
  const auto& tsdf = volume.tsdf_data();
  const auto& weight = volume.weight_data();

  for (int k = 0; k + 1 < d.nz; ++k) {
    for (int j = 0; j + 1 < d.ny; ++j) {
      for (int i = 0; i + 1 < d.nx; ++i) {
        std::array<std::size_t, 8> idx;
        int cube_case = 0;
        bool observed = true;
        for (int c = 0; c < 8 && observed; ++c) {
          idx[c] = volume.index(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
          observed = weight[idx[c]] > 0.0f;
          if (tsdf[idx[c]] < 0.0f) cube_case |= 1 << c;
        }
        if (!observed || cube_case == 0 || cube_case == 255) continue;

        std::array<std::int32_t, 12> vert;
        vert.fill(-1);
        for (const auto& tri : mc::case_triangles(cube_case)) {
          TriangleMesh::Triangle out;
          for (int t = 0; t < 3; ++t) {
            const int e = tri[t];
            if (vert[e] < 0) {
              const int c0 = mc::kEdgeCorners[e][0];
              const int c1 = mc::kEdgeCorners[e][1];
              const int axis = e / 4;
              const std::uint64_t key = static_cast<std::uint64_t>(idx[c0]) * 3 + axis;
              auto [it, inserted] = edge_vertex.try_emplace(key, static_cast<std::int32_t>(mesh.vertices.size()));
              if (inserted) {
                const double f0 = tsdf[idx[c0]];
                const double f1 = tsdf[idx[c1]];
                const double s = f0 / (f0 - f1);
                const Vec3 p0 = volume.voxel_center(i + (c0 & 1), j + ((c0 >> 1) & 1), k + ((c0 >> 2) & 1));
                Vec3 p = p0;
                p[axis] += s * volume.voxel_size();
                mesh.vertices.push_back(p);
                const auto& a = volume.color_data()[idx[c0]];
                const auto& b = volume.color_data()[idx[c1]];
                mesh.colors.emplace_back(a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2]));
              }
              vert[e] = it->second;
            }
            out[t] = vert[e];
          }
          mesh.triangles.push_back(out);
        }
      }
    }
  }
  return mesh;
}

}  // namespace gbm
