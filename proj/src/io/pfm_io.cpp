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

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <string>

#include "gbm/io.hpp"

namespace gbm::io {

namespace {

// Reads one whitespace-delimited header token; PFM headers are text lines.
std::string next_token(const std::vector<unsigned char>& b, std::size_t& pos) {
  while (pos < b.size() && std::isspace(b[pos])) ++pos;
  const std::size_t start = pos;
  while (pos < b.size() && !std::isspace(b[pos])) ++pos;
  if (start == pos) throw ParseError("pfm: truncated header", start);
  return std::string(b.begin() + static_cast<std::ptrdiff_t>(start), b.begin() + static_cast<std::ptrdiff_t>(pos));
}

template <typename T>
T parse_number(const std::string& tok, std::size_t offset, const char* what) {
  T value{};
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(std::string("pfm: bad ") + what + " '" + tok + "'", offset);
  return value;
}

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

}  // namespace

DepthMap parse_pfm(const std::vector<unsigned char>& bytes) {
  std::size_t pos = 0;
  const std::string magic = next_token(bytes, pos);
  if (magic == "PF") throw ParseError("pfm: color PFM not supported for depth", std::size_t{0});
  if (magic != "Pf") throw ParseError("pfm: bad magic '" + magic + "'", std::size_t{0});
  std::size_t tok_at = pos;
  const int w = parse_number<int>(next_token(bytes, pos), tok_at, "width");
  tok_at = pos;
  const int h = parse_number<int>(next_token(bytes, pos), tok_at, "height");
  if (w < 1 || h < 1) throw ParseError("pfm: non-positive dimensions", tok_at);
  tok_at = pos;
  const std::string scale_tok = next_token(bytes, pos);
  // from_chars<double> is available in libstdc++ 11.
  const double scale = parse_number<double>(scale_tok, tok_at, "scale");
  if (scale == 0.0 || !std::isfinite(scale)) throw ParseError("pfm: zero scale", tok_at);
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw ParseError("pfm: missing header terminator", pos);
  ++pos;  // single whitespace byte after scale

  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  const std::size_t need = n * 4;
  if (bytes.size() - pos < need) {
    throw ParseError("pfm: truncated payload, expected " + std::to_string(need) + " bytes", bytes.size());
  }
  if (bytes.size() - pos > need) {
    throw ParseError("pfm: trailing data after payload", pos + need);
  }
  const bool little = scale < 0.0;
  const bool swap = little != (std::endian::native == std::endian::little);
  DepthMap depth(w, h);
  for (int row = 0; row < h; ++row) {
    const int y = h - 1 - row;  // stored bottom-to-top
    for (int x = 0; x < w; ++x) {
      std::uint32_t raw;
      std::memcpy(&raw, bytes.data() + pos, 4);
      pos += 4;
      if (swap) raw = byteswap32(raw);
      depth.at(x, y) = static_cast<double>(std::bit_cast<float>(raw));
    }
  }
  return depth;
}

DepthMap load_pfm(const fs::path& path) {
  try {
    return parse_pfm(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_pfm(const fs::path& path, const DepthMap& depth) {
  depth.validate();
  const std::string header = "Pf\n" + std::to_string(depth.width) + " " + std::to_string(depth.height) + "\n-1.0\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + depth.depth.size() * 4);
  for (int row = 0; row < depth.height; ++row) {
    const int y = depth.height - 1 - row;
    for (int x = 0; x < depth.width; ++x) {
      const double d = depth.at(x, y);
      const float f = DepthMap::is_valid(d) ? static_cast<float>(d) : 0.0f;
      std::uint32_t raw = std::bit_cast<std::uint32_t>(f);
      if constexpr (std::endian::native != std::endian::little) raw = byteswap32(raw);
      unsigned char buf[4];
      std::memcpy(buf, &raw, 4);
      out.insert(out.end(), buf, buf + 4);
    }
  }
  write_file(path, out);
}

}  // namespace gbm::io
