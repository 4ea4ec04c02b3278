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
#include <numeric>

#include "gbm/metrics.hpp"

namespace gbm {

void SsimParams::validate() const {
  if (window < 1 || window % 2 == 0) throw InvalidArgument("SsimParams: window must be odd and >= 1");
  if (!(sigma > 0.0) || !(k1 > 0.0) || !(k2 > 0.0) || !(dynamic_range > 0.0)) {
    throw InvalidArgument("SsimParams: sigma, k1, k2 and dynamic_range must be > 0");
  }
}

double psnr(const ImageRGB& a, const ImageRGB& b) {
  a.validate();
  b.validate();
  require_same_size(a.width, a.height, b.width, b.height, "psnr");
  double sse = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - b.data[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.data.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

std::vector<double> gaussian_window(const SsimParams& p) {
  const int r = p.window / 2;
  std::vector<double> w(static_cast<std::size_t>(p.window) * p.window);
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      w[static_cast<std::size_t>(dy + r) * p.window + (dx + r)] = std::exp(-(dx * dx + dy * dy) / (2 * p.sigma * p.sigma));
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return w;
}

void check_ssim_inputs(const ImageGray& a, const ImageGray& b, const SsimParams& p) {
  p.validate();
  a.validate();
  b.validate();
  require_same_size(a.width, a.height, b.width, b.height, "ssim");
  if (a.width < p.window || a.height < p.window) throw InvalidArgument("ssim: image smaller than the window");
}

// Local SSIM for the window whose top-left corner is (x0, y0).
double local_ssim(const ImageGray& a, const ImageGray& b, const std::vector<double>& w, const SsimParams& p,
                  int x0, int y0) {
  const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
  const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
  double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
  for (int dy = 0; dy < p.window; ++dy) {
    for (int dx = 0; dx < p.window; ++dx) {
      const double wk = w[static_cast<std::size_t>(dy) * p.window + dx];
      const double va = a.at(x0 + dx, y0 + dy);
      const double vb = b.at(x0 + dx, y0 + dy);
      ma += wk * va;
      mb += wk * vb;
      saa += wk * va * va;
      sbb += wk * vb * vb;
      sab += wk * va * vb;
    }
  }
  const double var_a = saa - ma * ma;
  const double var_b = sbb - mb * mb;
  const double cov = sab - ma * mb;
  return ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
}

}  // namespace

double ssim(const ImageGray& a, const ImageGray& b, const SsimParams& params) {
  check_ssim_inputs(a, b, params);
  const auto w = gaussian_window(params);
  const int nx = a.width - params.window + 1;
  const int ny = a.height - params.window + 1;
  std::vector<double> row_sum(static_cast<std::size_t>(ny), 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < ny; ++y) {
    double s = 0.0;
    for (int x = 0; x < nx; ++x) s += local_ssim(a, b, w, params, x, y);
    row_sum[y] = s;
  }
  // Rows reduced in index order so the result does not depend on thread count.
  double total = 0.0;
  for (double s : row_sum) total += s;
  return total / (static_cast<double>(nx) * ny);
}

double ssim(const ImageRGB& a, const ImageRGB& b, const SsimParams& params) {
  return ssim(to_luminance(a), to_luminance(b), params);
}

namespace serial {

double ssim(const ImageGray& a, const ImageGray& b, const SsimParams& params) {
  check_ssim_inputs(a, b, params);
  const auto w = gaussian_window(params);
  const int nx = a.width - params.window + 1;
  const int ny = a.height - params.window + 1;
  double total = 0.0;
  for (int y = 0; y < ny; ++y) {
    double s = 0.0;
    for (int x = 0; x < nx; ++x) s += local_ssim(a, b, w, params, x, y);
    total += s;
  }
  return total / (static_cast<double>(nx) * ny);
}

}  // namespace serial

namespace {

VideoScore aggregate(std::vector<double> per_frame) {
  VideoScore score;
  score.per_frame = std::move(per_frame);
  double sum = 0.0;
  for (double s : score.per_frame) sum += s;
  score.mean = sum / static_cast<double>(score.per_frame.size());
  score.min = *std::min_element(score.per_frame.begin(), score.per_frame.end());
  return score;
}

template <typename Image>
VideoScore video_ssim_impl(const std::vector<Image>& fa, const std::vector<Image>& fb, const SsimParams& params) {
  if (fa.empty() || fb.empty()) throw InvalidArgument("video_ssim: empty sequence");
  if (fa.size() != fb.size()) {
    throw InvalidArgument("video_ssim: sequence length mismatch (" + std::to_string(fa.size()) + " vs " +
                          std::to_string(fb.size()) + ")");
  }
  std::vector<double> per_frame(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) per_frame[i] = ssim(fa[i], fb[i], params);
  return aggregate(std::move(per_frame));
}

}  // namespace

VideoScore video_ssim(const std::vector<ImageRGB>& frames_a, const std::vector<ImageRGB>& frames_b,
                      const SsimParams& params) {
  return video_ssim_impl(frames_a, frames_b, params);
}

VideoScore video_ssim(const std::vector<ImageGray>& frames_a, const std::vector<ImageGray>& frames_b,
                      const SsimParams& params) {
  return video_ssim_impl(frames_a, frames_b, params);
}

double lpips(const ImageRGB&, const ImageRGB&) {
  throw UnsupportedError("lpips: requires external perceptual model");
}

}  // namespace gbm
