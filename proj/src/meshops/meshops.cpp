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
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "gbm/meshops.hpp"

namespace gbm {

namespace {

constexpr double kMinArea = 1e-12;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

TriangleMesh with_triangles(const TriangleMesh& mesh, std::vector<TriangleMesh::Triangle> tris) {
  TriangleMesh out;
  out.vertices = mesh.vertices;
  out.colors = mesh.colors;
  out.triangles = std::move(tris);
  return out;
}

}  // namespace

TriangleMesh remove_degenerate_triangles(const TriangleMesh& mesh) {
  mesh.validate();
  std::vector<TriangleMesh::Triangle> kept;
  kept.reserve(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
    if (mesh.triangle_area(t) < kMinArea) continue;
    kept.push_back(tri);
  }
  return with_triangles(mesh, std::move(kept));
}

TriangleMesh remove_unreferenced_vertices(const TriangleMesh& mesh) {
  mesh.validate();
  std::vector<std::int32_t> remap(mesh.vertices.size(), -1);
  for (const auto& tri : mesh.triangles)
    for (auto v : tri) remap[v] = 0;
  TriangleMesh out;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (remap[v] < 0) continue;
    remap[v] = static_cast<std::int32_t>(out.vertices.size());
    out.vertices.push_back(mesh.vertices[v]);
    if (mesh.has_colors()) out.colors.push_back(mesh.colors[v]);
  }
  out.triangles.reserve(mesh.triangles.size());
  for (const auto& tri : mesh.triangles) out.triangles.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
  return out;
}

MeshClusterReport cluster_connected_triangles(const TriangleMesh& mesh) {
  mesh.validate();
  MeshClusterReport report;
  const std::size_t nt = mesh.triangles.size();
  UnionFind uf(mesh.vertices.size());
  for (const auto& tri : mesh.triangles) {
    uf.unite(tri[0], tri[1]);
    uf.unite(tri[1], tri[2]);
  }
  std::unordered_map<std::size_t, int> id_of_root;
  report.cluster_of_triangle.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t root = uf.find(mesh.triangles[t][0]);
    auto [it, inserted] = id_of_root.try_emplace(root, static_cast<int>(report.sizes.size()));
    if (inserted) {
      report.sizes.push_back(0);
      report.areas.push_back(0.0);
    }
    report.cluster_of_triangle[t] = it->second;
    report.sizes[it->second] += 1;
    report.areas[it->second] += mesh.triangle_area(t);
  }
  return report;
}

TriangleMesh keep_largest_cluster(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) throw InvalidArgument("keep_largest_cluster: mesh has no triangles");
  const MeshClusterReport report = cluster_connected_triangles(mesh);
  std::size_t best = 0;
  for (std::size_t c = 1; c < report.cluster_count(); ++c) {
    if (report.sizes[c] > report.sizes[best] ||
        (report.sizes[c] == report.sizes[best] && report.areas[c] > report.areas[best])) {
      best = c;
    }
  }
  std::vector<TriangleMesh::Triangle> kept;
  kept.reserve(report.sizes[best]);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (report.cluster_of_triangle[t] == static_cast<int>(best)) kept.push_back(mesh.triangles[t]);
  }
  return remove_unreferenced_vertices(with_triangles(mesh, std::move(kept)));
}

TriangleMesh clean_mesh(const TriangleMesh& mesh) {
  return keep_largest_cluster(remove_unreferenced_vertices(remove_degenerate_triangles(mesh)));
}

TriangleMesh decimate_vertex_clustering(const TriangleMesh& mesh, double cell_size) {
  if (!(cell_size > 0.0)) throw InvalidArgument("decimate_vertex_clustering: cell_size must be > 0");
  mesh.validate();
  // Ordered map keeps the output independent of hashing.
  std::map<std::array<long long, 3>, std::int32_t> cell_id;
  std::vector<std::int32_t> remap(mesh.vertices.size());
  std::vector<Vec3> sum_p, sum_c;
  std::vector<int> count;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec3& p = mesh.vertices[v];
    const std::array<long long, 3> cell{static_cast<long long>(std::floor(p.x() / cell_size)),
                                        static_cast<long long>(std::floor(p.y() / cell_size)),
                                        static_cast<long long>(std::floor(p.z() / cell_size))};
    auto [it, inserted] = cell_id.try_emplace(cell, static_cast<std::int32_t>(sum_p.size()));
    if (inserted) {
      sum_p.push_back(Vec3::Zero());
      sum_c.push_back(Vec3::Zero());
      count.push_back(0);
    }
    remap[v] = it->second;
    sum_p[it->second] += p;
    if (mesh.has_colors()) sum_c[it->second] += mesh.colors[v];
    count[it->second] += 1;
  }
  TriangleMesh out;
  for (std::size_t c = 0; c < sum_p.size(); ++c) {
    out.vertices.push_back(sum_p[c] / count[c]);
    if (mesh.has_colors()) out.colors.push_back(sum_c[c] / count[c]);
  }
  std::set<std::array<std::int32_t, 3>> seen;
  for (const auto& tri : mesh.triangles) {
    const TriangleMesh::Triangle t{remap[tri[0]], remap[tri[1]], remap[tri[2]]};
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
    // Rotate so the smallest index leads; keeps winding while catching duplicates.
    const int lead = static_cast<int>(std::min_element(t.begin(), t.end()) - t.begin());
    const std::array<std::int32_t, 3> key{t[lead], t[(lead + 1) % 3], t[(lead + 2) % 3]};
    if (!seen.insert(key).second) continue;
    out.triangles.push_back(t);
  }
  return remove_unreferenced_vertices(remove_degenerate_triangles(out));
}

double median_edge_length(const TriangleMesh& mesh) {
  std::vector<double> lengths;
  lengths.reserve(mesh.triangles.size() * 3);
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) lengths.push_back((mesh.vertices[t[k]] - mesh.vertices[t[(k + 1) % 3]]).norm());
  if (lengths.empty()) return 0.0;
  const auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  return *mid;
}

long euler_characteristic(const TriangleMesh& mesh) {
  std::set<std::pair<std::int32_t, std::int32_t>> edges;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const auto a = t[k];
      const auto b = t[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return static_cast<long>(mesh.vertices.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(mesh.triangles.size());
}

}  // namespace gbm
