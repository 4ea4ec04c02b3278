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

#include <gtest/gtest.h>

#include <queue>
#include <random>

#include "gbm/errors.hpp"
#include "gbm/meshops.hpp"

namespace gbm {
namespace {

TriangleMesh tetra(const Vec3& at, double s = 1.0) {
  TriangleMesh m;
  m.vertices = {at, at + Vec3(s, 0, 0), at + Vec3(0, s, 0), at + Vec3(0, 0, s)};
  m.triangles = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return m;
}

TriangleMesh merge(const TriangleMesh& a, const TriangleMesh& b) {
  TriangleMesh m = a;
  const int off = static_cast<int>(a.vertices.size());
  m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (auto t : b.triangles) m.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
  return m;
}

// Row of `n` triangles sharing vertices, starting at x0, scaled along y by `h`.
TriangleMesh strip(int n, double x0, double h = 1.0) {
  TriangleMesh m;
  for (int i = 0; i <= n + 1; ++i) m.vertices.emplace_back(x0 + i, (i % 2) * h, 0);
  for (int i = 0; i < n; ++i) m.triangles.push_back({i, i + 1, i + 2});
  return m;
}

TEST(Degenerate, Rules) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}};
  m.triangles = {{0, 0, 1}, {0, 1, 3}, {0, 1, 2}};
  const TriangleMesh r = remove_degenerate_triangles(m);
  ASSERT_EQ(r.triangles.size(), 1u);
  EXPECT_EQ(r.triangles[0], (TriangleMesh::Triangle{0, 1, 2}));
  EXPECT_EQ(r.vertices, m.vertices);
}

TEST(Unreferenced, Rules) {
  TriangleMesh m;
  m.vertices = {{9, 9, 9}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.colors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  m.triangles = {{1, 2, 3}};
  const TriangleMesh r = remove_unreferenced_vertices(m);
  ASSERT_EQ(r.vertices.size(), 3u);
  ASSERT_EQ(r.colors.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(r.vertices[r.triangles[0][k]], m.vertices[m.triangles[0][k]]);
    EXPECT_EQ(r.colors[r.triangles[0][k]], m.colors[m.triangles[0][k]]);
  }
  const TriangleMesh t = tetra(Vec3::Zero());
  EXPECT_EQ(remove_unreferenced_vertices(t), t);
  EXPECT_EQ(remove_unreferenced_vertices(TriangleMesh{}), TriangleMesh{});
}

TEST(Clusters, Examples) {
  const auto two = cluster_connected_triangles(merge(tetra(Vec3::Zero()), tetra(Vec3(5, 0, 0))));
  ASSERT_EQ(two.cluster_count(), 2u);
  EXPECT_EQ(two.sizes[0], 4u);
  EXPECT_EQ(two.sizes[1], 4u);
  EXPECT_EQ(cluster_connected_triangles(strip(1, 0)).cluster_count(), 1u);
  EXPECT_EQ(cluster_connected_triangles(TriangleMesh{}).cluster_count(), 0u);
}

TEST(Clusters, MatchBreadthFirstSearch) {
  std::mt19937 rng(17);
  for (int c = 0; c < 30; ++c) {
    TriangleMesh m;
    const int nv = 20 + static_cast<int>(rng() % 300);
    const int nt = static_cast<int>(rng() % 1000);
    for (int i = 0; i < nv; ++i) m.vertices.emplace_back(i, i * i % 7, i % 3);
    std::uniform_int_distribution<int> vi(0, nv - 1);
    for (int i = 0; i < nt; ++i) m.triangles.push_back({vi(rng), vi(rng), vi(rng)});
    const auto rep = cluster_connected_triangles(m);
    // BFS over triangles sharing a vertex.
    std::vector<std::vector<int>> by_vertex(nv);
    for (int t = 0; t < nt; ++t)
      for (int v : m.triangles[t]) by_vertex[v].push_back(t);
    std::vector<int> comp(nt, -1);
    std::vector<std::size_t> sizes;
    for (int s = 0; s < nt; ++s) {
      if (comp[s] >= 0) continue;
      const int id = static_cast<int>(sizes.size());
      sizes.push_back(0);
      std::queue<int> q;
      q.push(s);
      comp[s] = id;
      while (!q.empty()) {
        const int t = q.front();
        q.pop();
        ++sizes[id];
        for (int v : m.triangles[t])
          for (int o : by_vertex[v])
            if (comp[o] < 0) {
              comp[o] = id;
              q.push(o);
            }
      }
    }
    ASSERT_EQ(rep.sizes, sizes);
    ASSERT_EQ(rep.cluster_of_triangle, comp);
  }
}

TEST(KeepLargest, ByCountThenArea) {
  const TriangleMesh big = strip(100, 0), small = strip(5, 500);
  const TriangleMesh kept = keep_largest_cluster(merge(small, big));
  EXPECT_EQ(kept.triangles.size(), 100u);
  EXPECT_EQ(keep_largest_cluster(big).triangles.size(), 100u);
  // Equal counts; the second component has twice the area.
  const TriangleMesh a = strip(3, 0, 1.0), b = strip(3, 100, 2.0);
  const TriangleMesh t = keep_largest_cluster(merge(a, b));
  ASSERT_EQ(t.triangles.size(), 3u);
  EXPECT_GT(t.vertices[0].x(), 50.0);
  EXPECT_THROW(keep_largest_cluster(TriangleMesh{}), InvalidArgument);
}

TEST(CleanMesh, IdempotentAndGeometryPreserving) {
  std::mt19937 rng(3);
  TriangleMesh m = merge(merge(strip(40, 0), tetra(Vec3(100, 0, 0))), strip(7, -50));
  m.vertices.emplace_back(1e3, 1e3, 1e3);  // orphan
  m.triangles.push_back({0, 0, 1});
  const TriangleMesh c = clean_mesh(m);
  EXPECT_EQ(c.triangles.size(), 40u);
  EXPECT_EQ(clean_mesh(c), c);
  const TriangleMesh s = strip(40, 0);
  for (std::size_t t = 0; t < c.triangles.size(); ++t)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(c.vertices[c.triangles[t][k]], s.vertices[s.triangles[t][k]]);
}

TEST(Decimate, MergesCellsAndDropsCollapsed) {
  TriangleMesh m;
  const int n = 20;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices.emplace_back(i * 0.1, j * 0.1, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = j * (n + 1) + i;
      m.triangles.push_back({a, a + 1, a + n + 2});
      m.triangles.push_back({a, a + n + 2, a + n + 1});
    }
  const TriangleMesh d = decimate_vertex_clustering(m, 0.5);
  EXPECT_LT(d.vertices.size(), m.vertices.size() / 4);
  EXPECT_GT(d.triangles.size(), 0u);
  for (const auto& t : d.triangles) {
    EXPECT_TRUE(t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
  }
  EXPECT_NO_THROW(d.validate());
  EXPECT_THROW(decimate_vertex_clustering(m, 0.0), InvalidArgument);
}

TEST(Topology, EulerAndEdgeLength) {
  EXPECT_EQ(euler_characteristic(tetra(Vec3::Zero())), 2);
  EXPECT_EQ(euler_characteristic(strip(5, 0)), 1);
  EXPECT_EQ(euler_characteristic(merge(tetra(Vec3::Zero()), tetra(Vec3(3, 0, 0)))), 4);
  EXPECT_DOUBLE_EQ(median_edge_length(TriangleMesh{}), 0.0);
  EXPECT_NEAR(median_edge_length(tetra(Vec3::Zero(), 2.0)), 2.0 * std::sqrt(2.0), 1e-12);
}

}  // namespace
}  // namespace gbm
