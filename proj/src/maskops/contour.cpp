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
#include <array>
#include <queue>

#include "gbm/maskops.hpp"

namespace gbm {

namespace {

// Clockwise on screen (y down), starting east.
constexpr std::array<std::array<int, 2>, 8> kDirs{{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

int direction_of(int fx, int fy, int tx, int ty) {
  const int dx = tx - fx;
  const int dy = ty - fy;
  for (int d = 0; d < 8; ++d) {
    if (kDirs[d][0] == dx && kDirs[d][1] == dy) return d;
  }
  return -1;
}

struct Pixel {
  int x;
  int y;
  bool operator==(const Pixel&) const = default;
};

// Suzuki-Abe outer border following from `start`, whose west neighbour is background.
std::vector<Pixel> follow_border(const BinaryMask& m, Pixel start) {
  std::vector<Pixel> out{start};
  // Clockwise search around start, beginning at the west neighbour.
  Pixel first{};
  bool found = false;
  for (int k = 0; k < 8; ++k) {
    const int d = (4 + k) % 8;
    const Pixel n{start.x + kDirs[d][0], start.y + kDirs[d][1]};
    if (m.get_or_false(n.x, n.y)) {
      first = n;
      found = true;
      break;
    }
  }
  if (!found) return out;  // isolated pixel

  Pixel prev = first;
  Pixel cur = start;
  for (;;) {
    // Counter-clockwise search around `cur`, starting just after `prev`.
    const int from = direction_of(cur.x, cur.y, prev.x, prev.y);
    Pixel next{};
    for (int k = 1; k <= 8; ++k) {
      const int d = ((from - k) % 8 + 8) % 8;
      const Pixel n{cur.x + kDirs[d][0], cur.y + kDirs[d][1]};
      if (m.get_or_false(n.x, n.y)) {
        next = n;
        break;
      }
    }
    if (next == start && cur == first) break;
    prev = cur;
    cur = next;
    out.push_back(cur);
  }
  return out;
}

}  // namespace

std::vector<Contour> extract_contours(const BinaryMask& mask) {
  mask.validate();
  std::vector<Contour> contours;
  std::vector<std::uint8_t> labeled(mask.bits.size(), 0);
  std::queue<Pixel> frontier;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * mask.width + x;
      if (!mask.bits[idx] || labeled[idx]) continue;
      // Flood the component so later scans skip it.
      labeled[idx] = 1;
      frontier.push({x, y});
      while (!frontier.empty()) {
        const Pixel p = frontier.front();
        frontier.pop();
        for (const auto& d : kDirs) {
          const int nx = p.x + d[0];
          const int ny = p.y + d[1];
          if (!mask.get_or_false(nx, ny)) continue;
          const std::size_t ni = static_cast<std::size_t>(ny) * mask.width + nx;
          if (labeled[ni]) continue;
          labeled[ni] = 1;
          frontier.push({nx, ny});
        }
      }

      const std::vector<Pixel> border = follow_border(mask, {x, y});
      std::vector<Pixel> distinct;
      for (const Pixel& p : border) {
        bool seen = false;
        for (const Pixel& q : distinct) seen = seen || q == p;
        if (!seen) distinct.push_back(p);
        if (distinct.size() >= 3) break;
      }
      if (distinct.size() < 3) continue;

      Contour c;
      c.closed = true;
      c.points.reserve(border.size());
      for (const Pixel& p : border) c.points.emplace_back(p.x, p.y);
      if (c.signed_area() > 0.0) std::reverse(c.points.begin() + 1, c.points.end());
      contours.push_back(std::move(c));
    }
  }
  return contours;
}

}  // namespace gbm
