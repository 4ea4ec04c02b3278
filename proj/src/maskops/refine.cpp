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

#include <cmath>

#include "gbm/maskops.hpp"

namespace gbm {

void RefineParams::validate() const {
  if (erode_iterations < 0 || dilate_iterations < 0) throw InvalidArgument("RefineParams: negative iterations");
  if (!(rdp_ratio > 0.0)) throw InvalidArgument("RefineParams: rdp_ratio must be > 0");
}

std::vector<Contour> refine_contours(const BinaryMask& mask, const RefineParams& params) {
  params.validate();
  const BinaryMask grown =
      dilate(erode(mask, params.element, params.erode_iterations), params.element, params.dilate_iterations);
  if (grown.empty()) throw EmptyMaskError("empty-after-morphology");
  std::vector<Contour> contours = extract_contours(grown);
  if (contours.empty()) throw EmptyMaskError("empty-after-morphology: no traceable component");

  if (params.keep_largest_only) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < contours.size(); ++i) {
      if (std::abs(contours[i].signed_area()) > std::abs(contours[best].signed_area())) best = i;
    }
    contours = {contours[best]};
  }
  for (Contour& c : contours) {
    const double eps = c.perimeter() * params.rdp_ratio;
    c = rdp_simplify(c, eps);
  }
  return contours;
}

BinaryMask refine_mask(const BinaryMask& mask, const RefineParams& params) {
  BinaryMask out(mask.width, mask.height);
  for (const Contour& c : refine_contours(mask, params)) {
    const BinaryMask filled = fill_contour(c, mask.width, mask.height);
    for (std::size_t i = 0; i < out.bits.size(); ++i) out.bits[i] |= filled.bits[i];
  }
  return out;
}

}  // namespace gbm
