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
#include "gbm/image.hpp"

namespace gbm {

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;

  void validate() const;
};

struct VideoScore {
  std::vector<double> per_frame;
  double mean = 0.0;
  double min = 0.0;
};

/// 10 log10(L^2 / MSE) over all channels with L = 255; +inf for identical images.
double psnr(const ImageRGB& a, const ImageRGB& b);

/// Mean SSIM over all window positions fully inside the image (no padding),
/// Gaussian-weighted local statistics.
double ssim(const ImageGray& a, const ImageGray& b, const SsimParams& params = {});

/// SSIM on BT.601 luminance.
double ssim(const ImageRGB& a, const ImageRGB& b, const SsimParams& params = {});

/// Per-frame SSIM over two equally long sequences, with mean and minimum.
VideoScore video_ssim(const std::vector<ImageRGB>& frames_a, const std::vector<ImageRGB>& frames_b,
                      const SsimParams& params = {});
VideoScore video_ssim(const std::vector<ImageGray>& frames_a, const std::vector<ImageGray>& frames_b,
                      const SsimParams& params = {});

/// Always throws UnsupportedError: LPIPS needs an external perceptual network.
double lpips(const ImageRGB& a, const ImageRGB& b);

/// Z-buffered rasterization of a mesh into a camera; background black,
/// vertex colors interpolated (white for uncolored meshes).
struct MeshRender {
  ImageRGB color;
  BinaryMask coverage;
};
MeshRender render_mesh(const TriangleMesh& mesh, const CameraModel& cam);

namespace serial {

double ssim(const ImageGray& a, const ImageGray& b, const SsimParams& params = {});

}  // namespace serial

}  // namespace gbm
