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
#include <utility>

#include "gbm/maskops.hpp"

namespace gbm {

double perpendicular_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b.x() - a.x();
  const double dy = b.y() - a.y();
  const double len = std::sqrt(dx * dx + dy * dy);
  if (len == 0.0) return (p - a).norm();
  return std::abs(dx * (a.y() - p.y()) - (a.x() - p.x()) * dy) / len;
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = (p - a).dot(ab) / len2;
  if (t <= 0.0) return (p - a).norm();
  if (t >= 1.0) return (p - b).norm();
  return perpendicular_distance(p, a, b);
}

namespace {

// Marks kept indices in [lo, hi] of `pts` (endpoints always kept).
void simplify_range(const std::vector<Vec2>& pts, const std::vector<std::size_t>& idx, double epsilon,
                    std::vector<char>& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, idx.size() - 1}};
  keep[0] = keep[idx.size() - 1] = 1;
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) continue;
    double d_max = -1.0;
    std::size_t k_max = lo;
    for (std::size_t k = lo + 1; k < hi; ++k) {
      const double d = segment_distance(pts[idx[k]], pts[idx[lo]], pts[idx[hi]]);
      if (d > d_max) {  // strict: lowest index wins ties
        d_max = d;
        k_max = k;
      }
    }
    if (d_max > epsilon) {
      keep[k_max] = 1;
      stack.push_back({k_max, hi});
      stack.push_back({lo, k_max});
    }
  }
}

std::vector<std::size_t> simplify_chain(const std::vector<Vec2>& pts, const std::vector<std::size_t>& idx,
                                        double epsilon) {
  std::vector<char> keep(idx.size(), 0);
  simplify_range(pts, idx, epsilon, keep);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (keep[i]) out.push_back(idx[i]);
  return out;
}

}  // namespace

Contour rdp_simplify(const Contour& contour, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("rdp_simplify: epsilon must be > 0");
  const auto& pts = contour.points;
  const std::size_t n = pts.size();
  if (n < 2) throw InvalidArgument("rdp_simplify: too few points");
  if (std::all_of(pts.begin(), pts.end(), [&](const Vec2& p) { return p == pts.front(); })) {
    throw InvalidArgument("rdp_simplify: degenerate contour (all points identical)");
  }

  Contour out;
  out.closed = contour.closed;
  if (contour.closed && n == 2) {
    out.points = pts;
    return out;
  }
  if (!contour.closed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i : simplify_chain(pts, idx, epsilon)) out.points.push_back(pts[i]);
    return out;
  }

  std::size_t a = 0, b = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (pts[i] - pts[j]).squaredNorm();
      if (d > best) {
        best = d;
        a = i;
        b = j;
      }
    }
  }
  std::vector<std::size_t> first, second;
  for (std::size_t i = a; i <= b; ++i) first.push_back(i);
  for (std::size_t i = b; i != a; i = (i + 1) % n) second.push_back(i);
  second.push_back(a);

  std::vector<std::size_t> kept = simplify_chain(pts, first, epsilon);
  for (std::size_t i : simplify_chain(pts, second, epsilon)) kept.push_back(i);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (std::size_t i : kept) out.points.push_back(pts[i]);
  return out;
}

}  // namespace gbm
