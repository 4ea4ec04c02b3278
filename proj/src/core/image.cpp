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
#include <string>

#include "gbm/image.hpp"

namespace gbm {

ParseError::ParseError(const std::string& what, std::optional<std::size_t> offset)
    : std::runtime_error(offset ? what + " (at byte " + std::to_string(*offset) + ")" : what),
      offset_(offset) {}

namespace {

void check_dims(int w, int h, const char* type) {
  if (w < 1 || h < 1) {
    throw InvalidArgument(std::string(type) + ": width and height must be >= 1");
  }
}

std::size_t area(int w, int h) { return static_cast<std::size_t>(w) * static_cast<std::size_t>(h); }

}  // namespace

ImageRGB::ImageRGB(int w, int h, std::uint8_t fill) : width(w), height(h) {
  check_dims(w, h, "ImageRGB");
  data.assign(area(w, h) * 3, fill);
}

void ImageRGB::validate() const {
  check_dims(width, height, "ImageRGB");
  if (data.size() != area(width, height) * 3) throw InvalidArgument("ImageRGB: data size mismatch");
}

ImageGray::ImageGray(int w, int h, double fill, double range)
    : width(w), height(h), dynamic_range(range) {
  check_dims(w, h, "ImageGray");
  data.assign(area(w, h), fill);
}

void ImageGray::validate() const {
  check_dims(width, height, "ImageGray");
  if (data.size() != area(width, height)) throw InvalidArgument("ImageGray: data size mismatch");
}

BinaryMask::BinaryMask(int w, int h, bool fill) : width(w), height(h) {
  check_dims(w, h, "BinaryMask");
  bits.assign(area(w, h), fill ? 1 : 0);
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BinaryMask BinaryMask::complement() const {
  BinaryMask out = *this;
  for (auto& b : out.bits) b = b ? 0 : 1;
  return out;
}

void BinaryMask::validate() const {
  check_dims(width, height, "BinaryMask");
  if (bits.size() != area(width, height)) throw InvalidArgument("BinaryMask: bits size mismatch");
  for (auto b : bits) {
    if (b > 1) throw InvalidArgument("BinaryMask: bits must be 0 or 1");
  }
}

StructuringElement::StructuringElement(std::vector<PixelOffset> offsets) : offsets_(std::move(offsets)) {
  for (const auto& o : offsets_) {
    half_width_ = std::max(half_width_, std::abs(o.dx));
    half_height_ = std::max(half_height_, std::abs(o.dy));
  }
}

StructuringElement StructuringElement::square(int half_width, int half_height) {
  if (half_width < 0 || half_height < 0) throw InvalidArgument("StructuringElement: negative half size");
  std::vector<PixelOffset> offs;
  for (int dy = -half_height; dy <= half_height; ++dy)
    for (int dx = -half_width; dx <= half_width; ++dx) offs.push_back({dx, dy});
  return StructuringElement(std::move(offs));
}

StructuringElement StructuringElement::cross(int half_size) {
  if (half_size < 0) throw InvalidArgument("StructuringElement: negative half size");
  std::vector<PixelOffset> offs{{0, 0}};
  for (int k = 1; k <= half_size; ++k) {
    offs.push_back({k, 0});
    offs.push_back({-k, 0});
    offs.push_back({0, k});
    offs.push_back({0, -k});
  }
  return from_offsets(std::move(offs));
}

StructuringElement StructuringElement::from_offsets(std::vector<PixelOffset> offsets) {
  if (offsets.empty()) throw InvalidArgument("StructuringElement: no offsets");
  auto has = [&](PixelOffset p) { return std::find(offsets.begin(), offsets.end(), p) != offsets.end(); };
  if (!has({0, 0})) throw InvalidArgument("StructuringElement: origin missing");
  for (const auto& o : offsets) {
    if (!has({-o.dx, -o.dy})) throw InvalidArgument("StructuringElement: not symmetric under negation");
  }
  std::sort(offsets.begin(), offsets.end(),
            [](PixelOffset a, PixelOffset b) { return a.dy != b.dy ? a.dy < b.dy : a.dx < b.dx; });
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  return StructuringElement(std::move(offsets));
}

DepthMap::DepthMap(int w, int h, double fill) : width(w), height(h) {
  check_dims(w, h, "DepthMap");
  depth.assign(area(w, h), fill);
}

std::size_t DepthMap::valid_count() const {
  return static_cast<std::size_t>(std::count_if(depth.begin(), depth.end(), is_valid));
}

void DepthMap::validate() const {
  check_dims(width, height, "DepthMap");
  if (depth.size() != area(width, height)) throw InvalidArgument("DepthMap: depth size mismatch");
}

void require_same_size(int w0, int h0, int w1, int h1, const char* what) {
  if (w0 != w1 || h0 != h1) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(w0) + "x" +
                          std::to_string(h0) + " vs " + std::to_string(w1) + "x" + std::to_string(h1) + ")");
  }
}

ImageGray to_luminance(const ImageRGB& rgb) {
  rgb.validate();
  ImageGray out(rgb.width, rgb.height);
  const std::size_t n = area(rgb.width, rgb.height);
  for (std::size_t i = 0; i < n; ++i) {
    out.data[i] = 0.299 * rgb.data[3 * i] + 0.587 * rgb.data[3 * i + 1] + 0.114 * rgb.data[3 * i + 2];
  }
  return out;
}

ImageGray to_gray(const BinaryMask& mask) {
  mask.validate();
  ImageGray out(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) out.data[i] = mask.bits[i] ? 255.0 : 0.0;
  return out;
}

}  // namespace gbm
