// Copyright 2026 The quasicut Authors
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

// Minimal Nelder-Mead simplex minimizer.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace quasicut {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Minimizes f starting from an axis-aligned simplex of size `step` around
/// x0. Stops once the largest vertex distance from the best vertex falls
/// below `diameter_tol`.
template <std::size_t N, typename F>
SimplexResult<N> nelder_mead(F &&f, const std::array<double, N> &x0, double step, double diameter_tol = 1e-8,
                             std::size_t max_iterations = 20000) {
  using Point = std::array<double, N>;
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  pts[0] = x0;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = x0;
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  auto along = [](const Point &from, const Point &to, double t) {
    Point p;
    for (std::size_t k = 0; k < N; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  SimplexResult<N> res;
  for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
    std::array<std::size_t, N + 1> order;
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::array<Point, N + 1> sp;
    std::array<double, N + 1> sv;
    for (std::size_t i = 0; i <= N; ++i) {
      sp[i] = pts[order[i]];
      sv[i] = vals[order[i]];
    }
    pts = sp;
    vals = sv;

    double diameter = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < N; ++k) d2 += (pts[i][k] - pts[0][k]) * (pts[i][k] - pts[0][k]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < diameter_tol) {
      res.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);
    }
    const Point reflected = along(centroid, pts[N], -kReflect);
    const double fr = f(reflected);
    if (fr < vals[0]) {
      const Point expanded = along(centroid, pts[N], -kExpand);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[N] = expanded;
        vals[N] = fe;
      } else {
        pts[N] = reflected;
        vals[N] = fr;
      }
      continue;
    }
    if (fr < vals[N - 1]) {
      pts[N] = reflected;
      vals[N] = fr;
      continue;
    }
    const bool outside = fr < vals[N];
    const Point contracted = outside ? along(centroid, reflected, kContract) : along(centroid, pts[N], kContract);
    const double fc = f(contracted);
    if (fc < std::min(fr, vals[N])) {
      pts[N] = contracted;
      vals[N] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      pts[i] = along(pts[0], pts[i], kShrink);
      vals[i] = f(pts[i]);
    }
  }
  const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace quasicut
