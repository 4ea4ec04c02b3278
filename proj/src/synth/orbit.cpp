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
#include <numbers>

#include "gbm/synth.hpp"

namespace gbm::synth {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

double OrbitSpec::effective_altitude() const {
  if (altitude) return *altitude;
  if (tilt <= 0.0) throw InvalidArgument("OrbitSpec: tilt 0 needs an explicit altitude");
  return radius / std::tan(tilt * kDeg);
}

void OrbitSpec::validate() const {
  if (!(radius > 0.0)) throw InvalidArgument("OrbitSpec: radius must be > 0");
  if (frames < 1) throw InvalidArgument("OrbitSpec: frames must be >= 1");
  if (!(tilt >= 0.0 && tilt <= 90.0)) throw InvalidArgument("OrbitSpec: tilt must be in [0, 90]");
  if (width < 1 || height < 1 || !(fx > 0.0) || !(fy > 0.0)) throw InvalidArgument("OrbitSpec: bad intrinsics");
  if (!center.allFinite()) throw InvalidArgument("OrbitSpec: non-finite center");
  (void)effective_altitude();
}

std::vector<CameraModel> orbit_cameras(const OrbitSpec& spec) {
  spec.validate();
  const double altitude = spec.effective_altitude();
  const double tilt = spec.tilt * kDeg;
  std::vector<CameraModel> cams;
  cams.reserve(static_cast<std::size_t>(spec.frames));
  for (int k = 0; k < spec.frames; ++k) {
    const double az = 2.0 * std::numbers::pi * k / spec.frames;
    const Vec3 radial(std::cos(az), std::sin(az), 0.0);
    const Vec3 position = spec.center + spec.radius * radial + Vec3(0.0, 0.0, altitude);
    const Vec3 inward = -radial;
    const Vec3 forward = std::cos(tilt) * Vec3(0.0, 0.0, -1.0) + std::sin(tilt) * inward;
    const Vec3 right = inward.cross(Vec3::UnitZ());
    const Vec3 down = forward.cross(right);
    Mat3 r;
    r.col(0) = right;
    r.col(1) = down;
    r.col(2) = forward;

    CameraModel cam;
    cam.fx = spec.fx;
    cam.fy = spec.fy;
    cam.cx = spec.width / 2.0;
    cam.cy = spec.height / 2.0;
    cam.width = spec.width;
    cam.height = spec.height;
    cam.world_from_camera = make_rigid(r, position);
    cam.validate();
    cams.push_back(cam);
  }
  return cams;
}

}  // namespace gbm::synth
