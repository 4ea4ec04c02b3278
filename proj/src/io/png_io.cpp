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

#include <png.h>

#include <cstring>
#include <fstream>
#include <string>

#include "gbm/io.hpp"

namespace gbm::io {

std::vector<unsigned char> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void write_file(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

constexpr unsigned char kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

struct Decoded {
  int width;
  int height;
  std::vector<unsigned char> pixels;
};

Decoded decode(const fs::path& path, png_uint_32 format, int channels) {
  const auto bytes = read_file(path);
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0) {
    throw ParseError(path.string() + ": not a PNG file", std::size_t{0});
  }
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ParseError(path.string() + ": " + image.message, std::size_t{8});
  }
  image.format = format;
  Decoded out{static_cast<int>(image.width), static_cast<int>(image.height), {}};
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ParseError(path.string() + ": " + msg);
  }
  if (out.width < 1 || out.height < 1 ||
      out.pixels.size() != static_cast<std::size_t>(out.width) * out.height * channels) {
    throw ParseError(path.string() + ": inconsistent PNG dimensions");
  }
  return out;
}

void encode(const fs::path& path, int width, int height, png_uint_32 format, const unsigned char* pixels) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels, 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
  std::vector<unsigned char> buf(size);
  if (!png_image_write_to_memory(&image, buf.data(), &size, 0, pixels, 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
  buf.resize(size);
  write_file(path, buf);
}

}  // namespace

BinaryMask load_mask_png(const fs::path& path) {
  const Decoded d = decode(path, PNG_FORMAT_GRAY, 1);
  BinaryMask mask(d.width, d.height);
  for (std::size_t i = 0; i < d.pixels.size(); ++i) mask.bits[i] = d.pixels[i] > 127 ? 1 : 0;
  return mask;
}

void save_mask_png(const fs::path& path, const BinaryMask& mask) {
  mask.validate();
  std::vector<unsigned char> px(mask.bits.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = mask.bits[i] ? 255 : 0;
  encode(path, mask.width, mask.height, PNG_FORMAT_GRAY, px.data());
}

ImageRGB load_rgb_png(const fs::path& path) {
  Decoded d = decode(path, PNG_FORMAT_RGB, 3);
  ImageRGB img(d.width, d.height);
  img.data = std::move(d.pixels);
  return img;
}

void save_rgb_png(const fs::path& path, const ImageRGB& image) {
  image.validate();
  encode(path, image.width, image.height, PNG_FORMAT_RGB, image.data.data());
}

}  // namespace gbm::io
