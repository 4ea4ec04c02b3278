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

#include "gbm/synth.hpp"

namespace gbm::synth {

void PrimitiveScene::validate() const {
  if (primitives.empty()) throw InvalidArgument("PrimitiveScene: no primitives");
  for (const auto& p : primitives) {
    bool ok = p.albedo.allFinite();
    std::visit(
        [&ok](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Sphere>) ok = ok && s.center.allFinite() && std::isfinite(s.radius) && s.radius > 0;
          if constexpr (std::is_same_v<T, Box>)
            ok = ok && s.min.allFinite() && s.max.allFinite() && (s.max - s.min).minCoeff() > 0;
          if constexpr (std::is_same_v<T, GroundPlane>) ok = ok && std::isfinite(s.z);
        },
        p.shape);
    if (!ok) throw InvalidArgument("PrimitiveScene: non-finite or degenerate primitive");
  }
}

namespace {

struct Intersector {
  const Ray& ray;

  std::optional<double> operator()(const Sphere& s) const {
    const Vec3 oc = ray.origin - s.center;
    const double b = oc.dot(ray.direction);
    const double c = oc.squaredNorm() - s.radius * s.radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    // Numerically stable pair of roots.
    const double q = b > 0.0 ? -b - root : -b + root;
    double t0 = q;
    double t1 = q != 0.0 ? c / q : q;
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > 0.0) return t0;
    if (t1 > 0.0) return t1;
    return std::nullopt;
  }

  std::optional<double> operator()(const Box& b) const {
    double t_near = -std::numeric_limits<double>::infinity();
    double t_far = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
      const double o = ray.origin[a];
      const double d = ray.direction[a];
      if (d == 0.0) {
        if (o < b.min[a] || o > b.max[a]) return std::nullopt;
        continue;
      }
      double t0 = (b.min[a] - o) / d;
      double t1 = (b.max[a] - o) / d;
      if (t0 > t1) std::swap(t0, t1);
      t_near = std::max(t_near, t0);
      t_far = std::min(t_far, t1);
      if (t_near > t_far) return std::nullopt;
    }
    if (t_near > 0.0) return t_near;
    if (t_far > 0.0) return t_far;
    return std::nullopt;
  }

  std::optional<double> operator()(const GroundPlane& g) const {
    if (ray.direction.z() == 0.0) return std::nullopt;
    const double t = (g.z - ray.origin.z()) / ray.direction.z();
    if (t > 0.0) return t;
    return std::nullopt;
  }
};

void shade_pixel(const PrimitiveScene& scene, const CameraModel& cam, int u, int v, RenderOutput& out) {
  const Ray ray = pixel_to_ray(cam, u, v);
  double best_t = std::numeric_limits<double>::infinity();
  int best = -1;
  for (std::size_t p = 0; p < scene.primitives.size(); ++p) {
    const auto t = std::visit(Intersector{ray}, scene.primitives[p].shape);
    if (t && *t < best_t) {  // strict: earlier primitive wins exact ties
      best_t = *t;
      best = static_cast<int>(p);
    }
  }
  if (best < 0) return;
  out.depth.at(u, v) = best_t * ray.direction.dot(cam.optical_axis());
  const Vec3& a = scene.primitives[best].albedo;
  std::uint8_t* rgb = out.color.pixel(u, v);
  for (int k = 0; k < 3; ++k) rgb[k] = static_cast<std::uint8_t>(std::lround(std::clamp(a[k], 0.0, 1.0) * 255.0));
  out.primitive_masks[best].set(u, v, true);
}

RenderOutput blank(const PrimitiveScene& scene, const CameraModel& cam) {
  scene.validate();
  cam.validate();
  RenderOutput out{DepthMap(cam.width, cam.height), ImageRGB(cam.width, cam.height), {}};
  out.primitive_masks.assign(scene.primitives.size(), BinaryMask(cam.width, cam.height));
  return out;
}

}  // namespace

std::optional<double> intersect(const Shape& shape, const Ray& ray) { return std::visit(Intersector{ray}, shape); }

RenderOutput render(const PrimitiveScene& scene, const CameraModel& cam) {
  RenderOutput out = blank(scene, cam);
#pragma omp parallel for schedule(static)
  for (int v = 0; v < cam.height; ++v)
    for (int u = 0; u < cam.width; ++u) shade_pixel(scene, cam, u, v, out);
  return out;
}

namespace serial {

RenderOutput render(const PrimitiveScene& scene, const CameraModel& cam) {
  RenderOutput out = blank(scene, cam);
  for (int v = 0; v < cam.height; ++v)
    for (int u = 0; u < cam.width; ++u) shade_pixel(scene, cam, u, v, out);
  return out;
}

}  // namespace serial

}  // namespace gbm::synth
