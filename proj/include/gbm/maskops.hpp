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

/// Morphological dilation: union of the mask shifted by every element offset,
/// repeated `iterations` times. Shifts that leave the raster are dropped.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& element, int iterations = 1);

/// Morphological erosion: a pixel survives only if every offset lands on a
/// foreground pixel; out-of-raster counts as background.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& element, int iterations = 1);

/// Outer boundaries of the 8-connected foreground components, one closed
/// contour each, traced by Moore-neighbour border following. Contours run
/// counter-clockwise on screen (negative signed_area with y pointing down)
/// and start at the component's first pixel in row-major order. Components
/// with fewer than 3 distinct boundary pixels are skipped.
std::vector<Contour> extract_contours(const BinaryMask& mask);

/// Distance from `p` to the infinite line through `a` and `b`
/// (|a - p| when a == b).
double perpendicular_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Distance from `p` to the closed segment [a, b].
double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Ramer-Douglas-Peucker simplification. Keeps an ordered subsequence of the
/// input so that every dropped point is within `epsilon` of the result.
/// Closed contours are cut at their two mutually farthest points and both
/// halves simplified separately; a closed contour of two points comes back
/// unchanged.
Contour rdp_simplify(const Contour& contour, double epsilon);

/// Even-odd scanline fill of a closed contour. A pixel is set when its
/// integer point lies inside the polygon or on one of its edges.
BinaryMask fill_contour(const Contour& contour, int width, int height);

struct RefineParams {
  int erode_iterations = 1;
  int dilate_iterations = 2;
  StructuringElement element = StructuringElement::square(1, 1);
  double rdp_ratio = 1.0 / 500.0;  // epsilon = perimeter * rdp_ratio
  bool keep_largest_only = true;

  void validate() const;
};

/// erode -> dilate -> trace outer contours -> (largest only) -> RDP -> fill.
/// Throws EmptyMaskError("empty-after-morphology") when nothing is left to trace.
BinaryMask refine_mask(const BinaryMask& mask, const RefineParams& params = {});

/// Contours that refine_mask filled, for inspection and point-count checks.
std::vector<Contour> refine_contours(const BinaryMask& mask, const RefineParams& params = {});

namespace serial {

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& element, int iterations = 1);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& element, int iterations = 1);

}  // namespace serial

}  // namespace gbm
