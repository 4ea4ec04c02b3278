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
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "gbm/errors.hpp"

namespace gbm {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length
};

/// Pinhole camera. Camera frame is +x right, +y down, +z forward;
/// pixel (u, v) covers [u, u+1) x [v, v+1) and its center is (u+0.5, v+0.5).
struct CameraModel {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 1;
  int height = 1;
  Mat4 world_from_camera = Mat4::Identity();

  /// Throws InvalidArgument if intrinsics or the pose violate the model.
  void validate() const;

  Mat3 rotation() const { return world_from_camera.topLeftCorner<3, 3>(); }
  Vec3 center() const { return world_from_camera.topRightCorner<3, 1>(); }
  Vec3 optical_axis() const { return rotation().col(2); }

  Vec3 to_camera(const Vec3& p_world) const;
  Vec3 to_world(const Vec3& p_cam) const;
};

struct Projection {
  double u;
  double v;
  double z_cam;
};

/// Ray through the center of pixel (u, v). Throws std::out_of_range off-image.
Ray pixel_to_ray(const CameraModel& cam, int u, int v);

/// Continuous pixel coordinates and depth of a world point. No bounds check;
/// z_cam <= 0 means the point is behind the camera.
Projection project(const CameraModel& cam, const Vec3& p_world);

/// World point at camera depth `depth` in pixel (u, v), through the pixel center.
Vec3 back_project(const CameraModel& cam, int u, int v, double depth);

/// Rigid transform from a rotation and translation.
Mat4 make_rigid(const Mat3& rotation, const Vec3& translation);

/// Indexed triangle mesh with optional per-vertex color in [0,1]^3.
struct TriangleMesh {
  using Triangle = std::array<std::int32_t, 3>;

  std::vector<Vec3> vertices;
  std::vector<Vec3> colors;  // empty or vertices.size()
  std::vector<Triangle> triangles;

  bool has_colors() const { return !colors.empty(); }
  bool empty() const { return triangles.empty() && vertices.empty(); }
  /// Throws InvalidArgument on out-of-range indices or a color count mismatch.
  void validate() const;
  double triangle_area(std::size_t t) const;
  bool operator==(const TriangleMesh&) const = default;
};

/// Ordered pixel-space curve. Coordinates address pixel centers at integer
/// positions (pixel (3, 4) is the point (3, 4)).
struct Contour {
  std::vector<Vec2> points;
  bool closed = true;

  std::size_t size() const { return points.size(); }
  /// Sum of consecutive segment lengths, including the closing segment if closed.
  double perimeter() const;
  /// Shoelace area; sign follows traversal orientation in (x, y) coordinates.
  double signed_area() const;
  void validate() const;
  bool operator==(const Contour&) const = default;
};

}  // namespace gbm
