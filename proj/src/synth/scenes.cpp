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

#include <cstdio>
#include <random>

#include "gbm/io.hpp"
#include "gbm/maskops.hpp"
#include "gbm/synth.hpp"

namespace gbm::synth {

PrimitiveScene sphere_scene() {
  return PrimitiveScene{{Primitive{Sphere{Vec3::Zero(), 5.0}, Vec3(0.85, 0.55, 0.3)}}};
}

PrimitiveScene box_scene() {
  return PrimitiveScene{{
      Primitive{Box{Vec3(-5, -5, 0), Vec3(5, 5, 20)}, Vec3(0.7, 0.7, 0.75)},
      Primitive{GroundPlane{0.0}, Vec3(0.3, 0.5, 0.25)},
  }};
}

OrbitSpec sphere_orbit(int frames) {
  OrbitSpec o;
  o.center = Vec3::Zero();
  o.radius = 30.0;
  o.tilt = 60.0;
  o.frames = frames;
  o.width = 640;
  o.height = 480;
  o.fx = o.fy = 800.0;
  return o;
}

OrbitSpec box_orbit(int frames) {
  OrbitSpec o;
  o.center = Vec3(0, 0, 10);
  o.radius = 60.0;
  o.tilt = 60.0;
  o.frames = frames;
  o.width = 640;
  o.height = 480;
  o.fx = o.fy = 800.0;
  return o;
}

BinaryMask corrupt_mask(const BinaryMask& clean, unsigned seed, int speckles) {
  BinaryMask out = clean;
  if (clean.empty()) return out;
  std::mt19937 rng(seed);
  // Speckle only where a 12-pixel halo around the building is clear.
  const BinaryMask halo = dilate(clean, StructuringElement::square(12, 12));
  std::uniform_int_distribution<int> ux(1, clean.width - 2);
  std::uniform_int_distribution<int> uy(1, clean.height - 2);
  int placed = 0;
  for (int attempt = 0; placed < speckles && attempt < 100 * speckles; ++attempt) {
    const int x = ux(rng);
    const int y = uy(rng);
    if (halo(x, y)) continue;
    bool isolated = true;
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx) isolated = isolated && !out.get_or_false(x + dx, y + dy);
    if (!isolated) continue;
    out.set(x, y, true);
    ++placed;
  }

  // 2x2 hole at the interior point closest to the mask centroid.
  double sx = 0, sy = 0;
  std::size_t n = 0;
  for (int y = 0; y < clean.height; ++y)
    for (int x = 0; x < clean.width; ++x)
      if (clean(x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
  const BinaryMask interior = erode(clean, StructuringElement::square(4, 4));
  double best = -1;
  int hx = -1, hy = -1;
  for (int y = 0; y + 1 < clean.height; ++y)
    for (int x = 0; x + 1 < clean.width; ++x) {
      if (!interior(x, y) || !interior(x + 1, y + 1)) continue;
      const double d = (x - sx / n) * (x - sx / n) + (y - sy / n) * (y - sy / n);
      if (best < 0 || d < best) {
        best = d;
        hx = x;
        hy = y;
      }
    }
  if (hx >= 0) {
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) out.set(hx + dx, hy + dy, false);
  }
  return out;
}

std::vector<Frame> render_frames(const PrimitiveScene& scene, const OrbitSpec& orbit) {
  std::vector<Frame> frames;
  for (const CameraModel& cam : orbit_cameras(orbit)) {
    RenderOutput r = render(scene, cam);
    frames.push_back(Frame{std::move(r.depth), std::move(r.color), r.primitive_masks.front(), cam});
  }
  return frames;
}

std::string frame_stem(int frame) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", frame);
  return buf;
}

void make_scene_dir(const PrimitiveScene& scene, const OrbitSpec& orbit, const std::filesystem::path& out_dir,
                    bool noisy_masks, unsigned seed) {
  scene.validate();
  namespace fs = std::filesystem;
  for (const char* sub : {"frames", "depth", "masks"}) fs::create_directories(out_dir / sub);
  if (noisy_masks) fs::create_directories(out_dir / "masks_clean");
  const auto frames = render_frames(scene, orbit);
  std::vector<io::FramedCamera> cams;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const Frame& f = frames[k];
    const std::string stem = frame_stem(static_cast<int>(k));
    io::save_rgb_png(out_dir / "frames" / (stem + ".png"), f.color);
    io::save_pfm(out_dir / "depth" / (stem + ".pfm"), f.depth);
    if (noisy_masks) {
      io::save_mask_png(out_dir / "masks" / (stem + ".png"), corrupt_mask(f.mask, seed + static_cast<unsigned>(k)));
      io::save_mask_png(out_dir / "masks_clean" / (stem + ".png"), f.mask);
    } else {
      io::save_mask_png(out_dir / "masks" / (stem + ".png"), f.mask);
    }
    cams.push_back({static_cast<int>(k), f.camera});
  }
  io::save_cameras_json(out_dir / "cameras.json", cams);
}

}  // namespace gbm::synth
