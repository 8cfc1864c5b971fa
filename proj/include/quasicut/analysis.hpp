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

// Sweeps of the sampling weight over the Weyl tetrahedron O A1 A2 A3, the
// search for its maximum, and per-point cost comparisons.

#include <algorithm>
#include <array>
#include <numbers>
#include <thread>
#include <vector>

#include "quasicut/canonical.hpp"
#include "quasicut/circuit.hpp"
#include "quasicut/decomposition.hpp"
#include "quasicut/nelder_mead.hpp"

namespace quasicut {

struct SweepRow {
  ThetaVector theta;
  double w = 1.0;
  double legacy = 1.0;
  double g = 1.0;
};

inline SweepRow compare_costs(const ThetaVector &theta) {
  if (!theta.is_finite()) throw std::invalid_argument("theta must be finite");
  const PauliCoeffs u = pauli_coefficients(theta);
  return SweepRow{theta, weight_formula(u), legacy_cost(theta), gate_based_cost(u)};
}

/// Cubic lattice with m points per axis on [0, pi/4], filtered to
/// t1 >= t2 >= t3 (integer comparison, so vertices are always included).
/// Ordered lexicographically by lattice index.
inline std::vector<ThetaVector> weyl_grid(int m) {
  if (m < 2) throw std::invalid_argument("grid resolution must be >= 2");
  const double h = (std::numbers::pi / 4.0) / (m - 1);
  std::vector<ThetaVector> out;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k <= j; ++k) out.emplace_back(i * h, j * h, k * h);
    }
  }
  return out;
}

inline std::vector<SweepRow> sweep(int m, unsigned threads = 1) {
  const std::vector<ThetaVector> grid = weyl_grid(m);
  std::vector<SweepRow> rows(grid.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = compare_costs(grid[i]);
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, grid.size());
  if (workers == 1) {
    run(0, grid.size());
    return rows;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(run, std::min(grid.size(), w * chunk), std::min(grid.size(), (w + 1) * chunk));
  }
  for (auto &t : pool) t.join();
  return rows;
}

/// Nearest point of the tetrahedron under successive clamping
/// t1 in [0, pi/4], t2 in [0, t1], t3 in [0, t2].
inline ThetaVector clamp_to_weyl_domain(const ThetaVector &theta) {
  ThetaVector p;
  p[0] = std::clamp(theta[0], 0.0, std::numbers::pi / 4.0);
  p[1] = std::clamp(theta[1], 0.0, p[0]);
  p[2] = std::clamp(theta[2], 0.0, p[1]);
  return p;
}

struct MaxSearchResult {
  ThetaVector theta;
  double w = 0.0;
};

/// Grid search followed by simplex refinement of -W from the best grid
/// points. Points outside the tetrahedron are evaluated at their clamped
/// image plus a distance penalty.
inline MaxSearchResult find_max_w(int grid_resolution = 64, int restarts = 3) {
  const std::vector<SweepRow> rows = sweep(grid_resolution);
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t n_starts = std::min<std::size_t>(std::max(restarts, 1), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return rows[a].w > rows[b].w; });

  auto objective = [](const std::array<double, 3> &x) {
    const ThetaVector raw{x[0], x[1], x[2]};
    const ThetaVector p = clamp_to_weyl_domain(raw);
    double dist2 = 0.0;
    for (int k = 0; k < 3; ++k) dist2 += (raw[k] - p[k]) * (raw[k] - p[k]);
    return -weight_formula(pauli_coefficients(p)) + std::sqrt(dist2);
  };

  const double step = (std::numbers::pi / 4.0) / (grid_resolution - 1);
  MaxSearchResult best{rows[order[0]].theta, rows[order[0]].w};
  for (std::size_t s = 0; s < n_starts; ++s) {
    const ThetaVector &start = rows[order[s]].theta;
    const auto res = nelder_mead<3>(objective, {start[0], start[1], start[2]}, step, 1e-8);
    const ThetaVector p = clamp_to_weyl_domain({res.x[0], res.x[1], res.x[2]});
    const double w = weight_formula(pauli_coefficients(p));
    if (w > best.w) best = {p, w};
  }
  return best;
}

}  // namespace quasicut
