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

#include <random>

#include "gbm/errors.hpp"
#include "gbm/metrics.hpp"
#include "oracles/oracles.hpp"

namespace gbm {
namespace {

ImageRGB noise_image(std::mt19937& rng, int w, int h) {
  ImageRGB img(w, h);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() % 256);
  return img;
}

ImageGray noise_gray(std::mt19937& rng, int w, int h) {
  ImageGray g(w, h);
  std::uniform_real_distribution<double> u(0, 255);
  for (auto& v : g.data) v = u(rng);
  return g;
}

ImageRGB offset(const ImageRGB& a, int delta) {
  ImageRGB b = a;
  for (auto& v : b.data) v = static_cast<std::uint8_t>(std::clamp(int(v) + delta, 0, 255));
  return b;
}

TEST(Psnr, ClosedForms) {
  const ImageRGB a(16, 16, 50);
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  EXPECT_NEAR(psnr(a, offset(a, 16)), 10.0 * std::log10(65025.0 / 256.0), 1e-9);
  EXPECT_NEAR(psnr(ImageRGB(4, 4, 0), ImageRGB(4, 4, 255)), 0.0, 1e-12);
  EXPECT_THROW(psnr(a, ImageRGB(8, 16)), InvalidArgument);
}

TEST(Psnr, DecreasesWithUniformNoise) {
  std::mt19937 rng(1);
  ImageRGB a(32, 32);
  for (auto& v : a.data) v = static_cast<std::uint8_t>(64 + rng() % 128);
  double prev = INFINITY;
  for (int amp : {1, 4, 16, 64}) {
    ImageRGB b = a;
    for (auto& v : b.data) v = static_cast<std::uint8_t>(std::clamp(int(v) + ((rng() & 1) ? amp : -amp), 0, 255));
    const double p = psnr(a, b);
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(Ssim, IdentityAndConstant) {
  std::mt19937 rng(2);
  const ImageGray a = noise_gray(rng, 30, 20);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-9);
  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  EXPECT_NEAR(ssim(ImageGray(16, 16, 0.0), ImageGray(16, 16, 255.0)), c1 / (255.0 * 255.0 + c1), 1e-9);
}

TEST(Ssim, MatchesPerWindowOracle) {
  std::mt19937 rng(3);
  for (int c = 0; c < 5; ++c) {
    const ImageGray a = noise_gray(rng, 19 + c, 14 + 2 * c);
    ImageGray b = a;
    std::uniform_real_distribution<double> n(-20, 20);
    for (auto& v : b.data) v = std::clamp(v + n(rng), 0.0, 255.0);
    EXPECT_NEAR(ssim(a, b), oracle::windowed_ssim(a, b), 1e-9);
    EXPECT_NEAR(serial::ssim(a, b), ssim(a, b), 1e-12);
  }
}

TEST(Ssim, SmallNoiseAndSymmetry) {
  std::mt19937 rng(4);
  const ImageRGB a = noise_image(rng, 48, 40);
  ImageRGB b = a;
  for (auto& v : b.data) v = static_cast<std::uint8_t>(std::clamp(int(v) + int(rng() % 3) - 1, 0, 255));
  const double s = ssim(a, b);
  EXPECT_GT(s, 0.9);
  EXPECT_LT(s, 1.0);
  EXPECT_NEAR(s, oracle::windowed_ssim(to_luminance(a), to_luminance(b)), 1e-9);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
}

TEST(Ssim, RejectsSmallOrMismatched) {
  EXPECT_THROW(ssim(ImageGray(10, 20), ImageGray(10, 20)), InvalidArgument);
  EXPECT_THROW(ssim(ImageGray(12, 12), ImageGray(13, 12)), InvalidArgument);
  SsimParams p;
  p.window = 4;
  EXPECT_THROW(ssim(ImageGray(12, 12), ImageGray(12, 12), p), InvalidArgument);
}

TEST(VideoSsim, MeanAndMin) {
  std::mt19937 rng(5);
  std::vector<ImageRGB> a;
  for (int i = 0; i < 5; ++i) a.push_back(noise_image(rng, 24, 24));
  const VideoScore same = video_ssim(a, a);
  EXPECT_NEAR(same.mean, 1.0, 1e-9);
  EXPECT_NEAR(same.min, 1.0, 1e-9);
  auto b = a;
  b[2] = offset(b[2], 60);
  const VideoScore one = video_ssim(a, b);
  EXPECT_LT(one.min, one.mean);
  EXPECT_EQ(one.per_frame.size(), 5u);
  EXPECT_DOUBLE_EQ(one.min, one.per_frame[2]);
  EXPECT_THROW(video_ssim(std::vector<ImageRGB>{}, std::vector<ImageRGB>{}), InvalidArgument);
  b.pop_back();
  EXPECT_THROW(video_ssim(a, b), InvalidArgument);
}

TEST(VideoSsim, MinNeverExceedsMean) {
  std::mt19937 rng(6);
  for (int c = 0; c < 10; ++c) {
    std::vector<ImageGray> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(noise_gray(rng, 12, 12));
      b.push_back(noise_gray(rng, 12, 12));
    }
    const VideoScore s = video_ssim(a, b);
    EXPECT_LE(s.min, s.mean);
  }
}

TEST(Lpips, Unsupported) {
  try {
    lpips(ImageRGB(4, 4), ImageRGB(4, 4));
    FAIL();
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find("requires external perceptual model"), std::string::npos);
  }
}

TEST(RenderMesh, TriangleCoverageAndDepthOrder) {
  CameraModel cam;
  cam.fx = cam.fy = 50;
  cam.cx = cam.cy = 20;
  cam.width = cam.height = 40;
  TriangleMesh m;
  // Near red square half, far green square covering everything.
  m.vertices = {{-1, -1, 5}, {1, -1, 5}, {1, 1, 5}, {-10, -10, 10}, {10, -10, 10}, {10, 10, 10}, {-10, 10, 10}};
  m.colors = {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}, {0, 1, 0}, {0, 1, 0}};
  m.triangles = {{3, 4, 5}, {3, 5, 6}, {0, 1, 2}};
  const MeshRender r = render_mesh(m, cam);
  EXPECT_EQ(r.coverage.count(), 1600u);
  const std::uint8_t* near = r.color.pixel(28, 12);  // inside the near triangle
  EXPECT_EQ(near[0], 255);
  EXPECT_EQ(near[1], 0);
  const std::uint8_t* far = r.color.pixel(10, 30);
  EXPECT_EQ(far[1], 255);
}

}  // namespace
}  // namespace gbm
