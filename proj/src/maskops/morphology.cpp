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

#include <string>

#include "gbm/maskops.hpp"

namespace gbm {

namespace {

void check_iterations(int iterations) {
  if (iterations < 0) throw InvalidArgument("morphology: iterations must be >= 0, got " + std::to_string(iterations));
}

BinaryMask dilate_once(const BinaryMask& in, const StructuringElement& element) {
  BinaryMask out(in.width, in.height);
  const auto offsets = element.offsets();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      bool hit = false;
      for (const auto& o : offsets) {
        if (in.get_or_false(x - o.dx, y - o.dy)) {
          hit = true;
          break;
        }
      }
      out.bits[static_cast<std::size_t>(y) * in.width + x] = hit ? 1 : 0;
    }
  }
  return out;
}

BinaryMask erode_once(const BinaryMask& in, const StructuringElement& element) {
  BinaryMask out(in.width, in.height);
  const auto offsets = element.offsets();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      bool keep = true;
      for (const auto& o : offsets) {
        if (!in.get_or_false(x + o.dx, y + o.dy)) {
          keep = false;
          break;
        }
      }
      out.bits[static_cast<std::size_t>(y) * in.width + x] = keep ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& element, int iterations) {
  check_iterations(iterations);
  mask.validate();
  BinaryMask cur = mask;
  for (int i = 0; i < iterations; ++i) cur = dilate_once(cur, element);
  return cur;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& element, int iterations) {
  check_iterations(iterations);
  mask.validate();
  BinaryMask cur = mask;
  for (int i = 0; i < iterations; ++i) cur = erode_once(cur, element);
  return cur;
}

namespace serial {

// Scatter form: every foreground pixel stamps the element.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& element, int iterations) {
  check_iterations(iterations);
  mask.validate();
  BinaryMask cur = mask;
  for (int i = 0; i < iterations; ++i) {
    BinaryMask next(cur.width, cur.height);
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        if (!cur(x, y)) continue;
        for (const auto& o : element.offsets()) {
          if (next.in_bounds(x + o.dx, y + o.dy)) next.set(x + o.dx, y + o.dy, true);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& element, int iterations) {
  check_iterations(iterations);
  mask.validate();
  BinaryMask cur = mask;
  for (int i = 0; i < iterations; ++i) {
    BinaryMask next(cur.width, cur.height, true);
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        for (const auto& o : element.offsets()) {
          if (!cur.get_or_false(x + o.dx, y + o.dy)) {
            next.set(x, y, false);
            break;
          }
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace serial

}  // namespace gbm
