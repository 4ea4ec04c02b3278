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

#include <vector>

#include "gbm/geometry.hpp"

namespace gbm {

struct MeshClusterReport {
  std::vector<int> cluster_of_triangle;
  std::vector<std::size_t> sizes;  // triangles per cluster
  std::vector<double> areas;       // m^2 per cluster

  std::size_t cluster_count() const { return sizes.size(); }
};

/// Drops triangles that repeat a vertex index or have area < 1e-12.
TriangleMesh remove_degenerate_triangles(const TriangleMesh& mesh);

/// Drops vertices no triangle uses; keeps triangle order and remaps indices.
TriangleMesh remove_unreferenced_vertices(const TriangleMesh& mesh);

/// Triangles sharing at least one vertex are in the same cluster. Cluster ids
/// are assigned in order of each cluster's first triangle.
MeshClusterReport cluster_connected_triangles(const TriangleMesh& mesh);

/// Keeps the cluster with the most triangles (ties: larger area, then lower id).
/// Throws InvalidArgument on a mesh without triangles.
TriangleMesh keep_largest_cluster(const TriangleMesh& mesh);

/// remove_degenerate_triangles -> remove_unreferenced_vertices -> keep_largest_cluster.
TriangleMesh clean_mesh(const TriangleMesh& mesh);

/// Vertex-clustering decimation on a grid of `cell_size`; vertices in one cell
/// merge to their mean. Collapsed and duplicate triangles are dropped.
TriangleMesh decimate_vertex_clustering(const TriangleMesh& mesh, double cell_size);

/// Median triangle edge length; 0 for a mesh without triangles.
double median_edge_length(const TriangleMesh& mesh);

/// V - E + F with edges counted as unique undirected vertex pairs.
long euler_characteristic(const TriangleMesh& mesh);

}  // namespace gbm
