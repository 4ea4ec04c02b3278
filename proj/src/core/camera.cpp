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
#include <stdexcept>
#include <string>

#include "gbm/geometry.hpp"

namespace gbm {

void CameraModel::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw InvalidArgument("CameraModel: focal lengths must be positive");
  if (width < 1 || height < 1) throw InvalidArgument("CameraModel: image size must be >= 1");
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height)) {
    throw InvalidArgument("CameraModel: principal point outside the image");
  }
  const Mat3 r = rotation();
  const double ortho_err = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(ortho_err < 1e-9)) throw InvalidArgument("CameraModel: rotation is not orthonormal");
  if (r.determinant() <= 0.0) throw InvalidArgument("CameraModel: rotation has det <= 0");
  const Eigen::RowVector4d last = world_from_camera.row(3);
  if (last != Eigen::RowVector4d(0, 0, 0, 1)) throw InvalidArgument("CameraModel: last pose row must be 0 0 0 1");
  if (!world_from_camera.allFinite()) throw InvalidArgument("CameraModel: non-finite pose");
}

Vec3 CameraModel::to_camera(const Vec3& p_world) const {
  return rotation().transpose() * (p_world - center());
}

Vec3 CameraModel::to_world(const Vec3& p_cam) const { return rotation() * p_cam + center(); }

Ray pixel_to_ray(const CameraModel& cam, int u, int v) {
  if (u < 0 || v < 0 || u >= cam.width || v >= cam.height) {
    throw std::out_of_range("pixel_to_ray: pixel (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") outside " + std::to_string(cam.width) + "x" + std::to_string(cam.height));
  }
  const Vec3 d_cam((u + 0.5 - cam.cx) / cam.fx, (v + 0.5 - cam.cy) / cam.fy, 1.0);
  return Ray{cam.center(), (cam.rotation() * d_cam).normalized()};
}

Projection project(const CameraModel& cam, const Vec3& p_world) {
  const Vec3 p = cam.to_camera(p_world);
  return Projection{cam.fx * p.x() / p.z() + cam.cx, cam.fy * p.y() / p.z() + cam.cy, p.z()};
}

Vec3 back_project(const CameraModel& cam, int u, int v, double depth) {
  const Vec3 p_cam((u + 0.5 - cam.cx) / cam.fx * depth, (v + 0.5 - cam.cy) / cam.fy * depth, depth);
  return cam.to_world(p_cam);
}

Mat4 make_rigid(const Mat3& rotation, const Vec3& translation) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation;
  m.topRightCorner<3, 1>() = translation;
  return m;
}

void TriangleMesh::validate() const {
  if (!colors.empty() && colors.size() != vertices.size()) {
    throw InvalidArgument("TriangleMesh: color count does not match vertex count");
  }
  const auto n = static_cast<std::int64_t>(vertices.size());
  for (const auto& t : triangles) {
    for (auto i : t) {
      if (i < 0 || i >= n) throw InvalidArgument("TriangleMesh: vertex index out of range");
    }
  }
}

double TriangleMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  const Vec3& a = vertices[tri[0]];
  return 0.5 * (vertices[tri[1]] - a).cross(vertices[tri[2]] - a).norm();
}

double Contour::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) p += (points[i] - points[i - 1]).norm();
  if (closed && points.size() > 1) p += (points.front() - points.back()).norm();
  return p;
}

double Contour::signed_area() const {
  double a = 0.0;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = points[i];
    const Vec2& q = points[(i + 1) % n];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

void Contour::validate() const {
  if (closed && points.size() < 3) throw InvalidArgument("Contour: closed contour needs >= 3 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] == points[i - 1]) throw InvalidArgument("Contour: consecutive duplicate points");
  }
}

}  // namespace gbm
