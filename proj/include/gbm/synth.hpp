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

#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include "gbm/fusion.hpp"
#include "gbm/geometry.hpp"
#include "gbm/image.hpp"

namespace gbm::synth {

/// Circular orbit around a vertical axis through `center`, z up.
/// Tilt 0 looks straight down, 90 looks horizontally.
struct OrbitSpec {
  Vec3 center = Vec3::Zero();
  double radius = 30.0;   // horizontal distance from the axis, meters
  std::optional<double> altitude;  // camera height above center.z; default radius * cot(tilt)
  double tilt = 60.0;     // degrees
  int frames = 31;
  int width = 320;
  int height = 240;
  double fx = 400.0;
  double fy = 400.0;

  double effective_altitude() const;
  void validate() const;
};

/// Camera k sits at azimuth 360 k / frames degrees. The optical axis has the
/// requested tilt and crosses the vertical axis through `center`.
std::vector<CameraModel> orbit_cameras(const OrbitSpec& spec);

struct Sphere {
  Vec3 center;
  double radius;
};
struct Box {
  Vec3 min;
  Vec3 max;
};
struct GroundPlane {
  double z;
};
using Shape = std::variant<Sphere, Box, GroundPlane>;

struct Primitive {
  Shape shape;
  Vec3 albedo = Vec3(0.8, 0.8, 0.8);  // RGB in [0,1]
};

/// The first primitive is the "building" whose mask render() reports.
struct PrimitiveScene {
  std::vector<Primitive> primitives;

  void validate() const;
};

/// Nearest positive ray parameter hitting `shape`, if any.
std::optional<double> intersect(const Shape& shape, const Ray& ray);

struct RenderOutput {
  DepthMap depth;
  ImageRGB color;
  std::vector<BinaryMask> primitive_masks;  // one per primitive, nearest-hit ownership

  const BinaryMask& building_mask() const { return primitive_masks.front(); }
};

/// Per-pixel analytic ray cast with flat albedo shading.
RenderOutput render(const PrimitiveScene& scene, const CameraModel& cam);

namespace serial {
RenderOutput render(const PrimitiveScene& scene, const CameraModel& cam);
}

// Canonical fixtures.
PrimitiveScene sphere_scene();  // r = 5 m sphere at the origin
PrimitiveScene box_scene();     // 10 x 10 x 20 m tower on a z = 0 ground plane
OrbitSpec sphere_orbit(int frames = 31);
OrbitSpec box_orbit(int frames = 31);

/// Building mask corrupted by isolated speckle far from the building and a
/// 2x2 hole well inside it. Deterministic for a given seed.
BinaryMask corrupt_mask(const BinaryMask& clean, unsigned seed, int speckles = 40);

enum class SceneKind { kSphere, kBox, kNoisyMask };

/// Rendered frames of `scene` along `orbit`, masks taken from the building primitive.
std::vector<Frame> render_frames(const PrimitiveScene& scene, const OrbitSpec& orbit);

/// Writes frames/NNN.png, depth/NNN.pfm, masks/NNN.png and cameras.json.
/// With noisy masks, masks/ holds the corrupted masks and masks_clean/ the
/// ground truth.
void make_scene_dir(const PrimitiveScene& scene, const OrbitSpec& orbit, const std::filesystem::path& out_dir,
                    bool noisy_masks = false, unsigned seed = 7);

/// Three-digit zero-padded frame file stem.
std::string frame_stem(int frame);

}  // namespace gbm::synth
