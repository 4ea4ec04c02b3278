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

#include "gbm/image.hpp"

namespace gbm {

struct SmoothParams {
  double sigma = 2.0;     // pixels
  int kernel_radius = 0;  // 0 selects ceil(3 * sigma)
  double max_depth = 1e4; // meters; deeper samples are dropped before smoothing

  int effective_radius() const;
  void validate() const;
};

/// Mask- and validity-weighted Gaussian smoothing (normalized convolution).
/// Out-of-mask pixels come back invalid; in-mask holes with any valid
/// neighbour inside the window are filled.
DepthMap smooth_depth(const DepthMap& depth, const BinaryMask& mask, const SmoothParams& params = {});

/// Entries > max_depth or <= 0 (or non-finite) become invalid.
DepthMap clamp_range(const DepthMap& depth, double max_depth);

namespace serial {

DepthMap smooth_depth(const DepthMap& depth, const BinaryMask& mask, const SmoothParams& params = {});

}  // namespace serial

}  // namespace gbm
