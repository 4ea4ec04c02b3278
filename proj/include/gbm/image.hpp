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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gbm/errors.hpp"

namespace gbm {

/// Row-major 8-bit RGB frame.
struct ImageRGB {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height * 3

  ImageRGB() = default;
  ImageRGB(int w, int h, std::uint8_t fill = 0);

  std::uint8_t* pixel(int x, int y) { return &data[3 * (static_cast<std::size_t>(y) * width + x)]; }
  const std::uint8_t* pixel(int x, int y) const {
    return &data[3 * (static_cast<std::size_t>(y) * width + x)];
  }
  void validate() const;
  bool operator==(const ImageRGB&) const = default;
};

/// Row-major scalar image. Values are either 0..255 luminance or unit
/// interval, as declared by `dynamic_range`.
struct ImageGray {
  int width = 0;
  int height = 0;
  double dynamic_range = 255.0;
  std::vector<double> data;

  ImageGray() = default;
  ImageGray(int w, int h, double fill = 0.0, double range = 255.0);

  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  void validate() const;
};

/// Foreground/background raster; one byte per pixel, 0 or 1.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int w, int h, bool fill = false);

  bool operator()(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  /// False outside the raster.
  bool get_or_false(int x, int y) const { return in_bounds(x, y) && (*this)(x, y); }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  BinaryMask complement() const;
  void validate() const;
  bool operator==(const BinaryMask&) const = default;
};

struct PixelOffset {
  int dx = 0;
  int dy = 0;
  bool operator==(const PixelOffset&) const = default;
};

/// Neighbourhood used by dilation and erosion. Always contains the origin
/// and is closed under negation.
class StructuringElement {
 public:
  /// (2*half_width+1) x (2*half_height+1) box; half sizes 1,1 give 8-connectivity.
  static StructuringElement square(int half_width = 1, int half_height = 1);
  /// Plus-shaped element (4-connectivity for half size 1).
  static StructuringElement cross(int half_size = 1);
  /// Throws InvalidArgument unless offsets are non-empty, hold (0,0), and are symmetric.
  static StructuringElement from_offsets(std::vector<PixelOffset> offsets);

  std::span<const PixelOffset> offsets() const { return offsets_; }
  int half_width() const { return half_width_; }
  int half_height() const { return half_height_; }

 private:
  explicit StructuringElement(std::vector<PixelOffset> offsets);

  std::vector<PixelOffset> offsets_;
  int half_width_ = 0;
  int half_height_ = 0;
};

/// Metric depth along the camera z axis; entries <= 0 or non-finite are invalid.
struct DepthMap {
  static constexpr double kInvalid = 0.0;

  int width = 0;
  int height = 0;
  std::vector<double> depth;

  DepthMap() = default;
  DepthMap(int w, int h, double fill = kInvalid);

  double& at(int x, int y) { return depth[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return depth[static_cast<std::size_t>(y) * width + x]; }
  static bool is_valid(double d) { return std::isfinite(d) && d > 0.0; }
  bool valid(int x, int y) const { return is_valid(at(x, y)); }
  std::size_t valid_count() const;
  void validate() const;
};

/// Throws InvalidArgument naming `what` unless the two rasters share a size.
void require_same_size(int w0, int h0, int w1, int h1, const char* what);

/// ITU-R BT.601 luma, 0..255.
ImageGray to_luminance(const ImageRGB& rgb);
/// Mask as 0/255 gray.
ImageGray to_gray(const BinaryMask& mask);

}  // namespace gbm
