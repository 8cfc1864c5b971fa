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

#include <gtest/gtest.h>

#include <numbers>

#include "quasicut/analysis.hpp"
#include "test_support.hpp"

namespace quasicut {
namespace {

constexpr double kPi = std::numbers::pi;

/// Cost of the full 16-term sum computed from an expm-built unitary, an
/// oracle independent of the product-form coefficients.
double oracle_weight(const ThetaVector &t) {
  const Eigen::Matrix4cd u = testing::expm_canonical(t[0], t[1], t[2]);
  std::array<cd, 4> c;
  for (int a = 0; a < 4; ++a) {
    const Eigen::Matrix4cd p = testing::literal_kron(testing::literal_pauli(a), testing::literal_pauli(a));
    c[a] = (p * u).trace() / 4.0;
  }
  double w = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      // |c_a c_b^*| terms of the two real combinations.
      const cd x = c[a] * std::conj(c[b]);
      w += a == b ? std::norm(c[a]) : std::abs(x.real()) + std::abs(x.imag());
    }
  }
  return w;
}

TEST(CompareCosts, Landmarks) {
  const auto o = compare_costs(landmarks::kOrigin);
  EXPECT_NEAR(o.w, 1.0, 1e-12);
  EXPECT_NEAR(o.legacy, 1.0, 1e-12);
  EXPECT_NEAR(o.g, 1.0, 1e-12);
  const auto a1 = compare_costs(landmarks::kA1);
  EXPECT_NEAR(a1.w, 3.0, 1e-12);
  EXPECT_NEAR(a1.g, 2.0, 1e-12);
  const auto a3 = compare_costs(landmarks::kA3);
  EXPECT_NEAR(a3.w, 7.0, 1e-12);
  EXPECT_NEAR(a3.legacy, 27.0, 1e-12);
  EXPECT_THROW(compare_costs(ThetaVector{INFINITY, 0, 0}), std::invalid_argument);
}

TEST(CompareCosts, WeightMatchesExpmOracle) {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const ThetaVector t = testing::random_theta(rng);
    // 1 + sum_{a != b} (|x + x*| + |x - x*|) = sum |u_a|^2 + 2 sum_{a != b} (|Re x| + |Im x|).
    EXPECT_NEAR(compare_costs(t).w, 1.0 + 2.0 * (oracle_weight(t) - 1.0), 1e-10);
  }
}

TEST(WeylGrid, SizeAndOrder) {
  EXPECT_THROW(weyl_grid(1), std::invalid_argument);
  // Points with i >= j >= k in {0..m-1}: m(m+1)(m+2)/6.
  for (int m : {2, 3, 10, 20}) EXPECT_EQ(weyl_grid(m).size(), static_cast<std::size_t>(m * (m + 1) * (m + 2) / 6));
  for (const auto &t : weyl_grid(7)) EXPECT_TRUE(in_weyl_domain(t));
}

TEST(Sweep, VerticesAtResolutionTwo) {
  const auto rows = sweep(2);
  ASSERT_EQ(rows.size(), 4u);
  const double expected_w[4] = {1, 3, 7, 7};
  const double expected_legacy[4] = {1, 3, 9, 27};
  const double expected_g[4] = {1, 2, 4, 4};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(rows[i].w, expected_w[i], 1e-12);
    EXPECT_NEAR(rows[i].legacy, expected_legacy[i], 1e-12);
    EXPECT_NEAR(rows[i].g, expected_g[i], 1e-12);
  }
  EXPECT_EQ(rows[3].theta, landmarks::kA3);
}

TEST(Sweep, OrderingInvariantsOnGrid) {
  for (const auto &r : sweep(20)) {
    EXPECT_LE(r.g, r.w + 1e-10);
    EXPECT_LE(r.w, r.legacy + 1e-10);
    const int nonzero = (r.theta[0] > 0) + (r.theta[1] > 0) + (r.theta[2] > 0);
    EXPECT_EQ(std::abs(r.w - r.legacy) <= 1e-10, nonzero <= 1);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeRows) {
  const auto a = sweep(12, 1);
  const auto b = sweep(12, 5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].theta, b[i].theta);
    EXPECT_EQ(a[i].w, b[i].w);
  }
}

TEST(Symmetry, ReflectionOfFirstAngle) {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const ThetaVector t = testing::random_weyl_theta(rng);
    const ThetaVector m{-t[0], t[1], t[2]};
    EXPECT_TRUE(in_mirrored_weyl_domain(m));
    EXPECT_NEAR(compare_costs(t).w, compare_costs(m).w, 1e-12);
  }
}

TEST(Clamp, ProjectsIntoDomain) {
  EXPECT_EQ(clamp_to_weyl_domain(ThetaVector{1.0, 0.9, -0.1}), (ThetaVector{kPi / 4, kPi / 4, 0.0}));
  const ThetaVector inside{0.5, 0.3, 0.1};
  EXPECT_EQ(clamp_to_weyl_domain(inside), inside);
}

TEST(FindMax, OnSurfaceNearReportedPoint) {
  const auto best = find_max_w();
  EXPECT_GE(best.w, 8.85);
  EXPECT_LE(best.w, 8.89);
  EXPECT_NEAR(best.theta[0], kPi / 4, 1e-3);
  EXPECT_NEAR(best.theta[1], 0.202 * kPi, 0.01 * kPi);
  EXPECT_NEAR(best.theta[2], 0.136 * kPi, 0.01 * kPi);
  // No grid point beats the refined maximum.
  for (const auto &r : sweep(30)) EXPECT_LE(r.w, best.w + 1e-12);
}

}  // namespace
}  // namespace quasicut
