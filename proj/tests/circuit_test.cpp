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

#include "quasicut/circuit.hpp"
#include "quasicut/decomposition.hpp"
#include "test_support.hpp"

namespace quasicut {
namespace {

using namespace std::complex_literals;

Eigen::MatrixXcd literal_observable(const Observable &o) {
  const int n = o.num_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto &t : o.terms()) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (char ch : t.pauli) {
      const int a = ch == 'I' ? 0 : ch == 'X' ? 1 : ch == 'Y' ? 2 : 3;
      m = testing::literal_kron(m, testing::literal_pauli(a));
    }
    out += t.coeff * m;
  }
  return out;
}

double oracle_expectation(const Circuit &c, const Observable &o) {
  const Eigen::VectorXcd psi = testing::circuit_matrix_oracle(c).col(0);
  return (psi.adjoint() * literal_observable(o) * psi)(0, 0).real();
}

TEST(Circuit, Validation) {
  EXPECT_THROW(Circuit(0), std::length_error);
  EXPECT_THROW(Circuit(13), std::length_error);
  Circuit c(2);
  EXPECT_THROW(c.add(SingleGate{2, Vector3::UnitX(), 0.1}), std::out_of_range);
  EXPECT_THROW(c.add(SingleGate{0, Vector3(1, 1, 0), 0.1}), std::invalid_argument);
  EXPECT_THROW(c.add(CanonicalGate{1, 1, ThetaVector{0.1, 0, 0}, false}), std::invalid_argument);
  EXPECT_THROW(c.add(CanonicalGate{0, 1, ThetaVector{NAN, 0, 0}, false}), std::invalid_argument);
  EXPECT_THROW(c.add(Raw1qGate{0, 2.0 * Matrix2::Identity()}), std::invalid_argument);
  EXPECT_TRUE(c.gates().empty());
}

TEST(Circuit, CutIndices) {
  Circuit c(3);
  c.add(SingleGate{0, Vector3::UnitX(), 0.2});
  c.add(CanonicalGate{0, 1, ThetaVector{0.1, 0, 0}, true});
  c.add(CanonicalGate{1, 2, ThetaVector{0.1, 0, 0}, false});
  c.add(CanonicalGate{2, 0, ThetaVector{0.1, 0.1, 0}, true});
  EXPECT_EQ(c.cut_indices(), (std::vector<std::size_t>{1, 3}));
}

TEST(Circuit, BellFixture) {
  for (bool cut : {false, true}) {
    const Circuit c = testing::bell_circuit(cut);
    EXPECT_NEAR(exact_expectation(c, Observable::single(1.0, "ZZ")), 1.0, 1e-12);
    EXPECT_NEAR(exact_expectation(c, Observable::single(1.0, "XX")), 1.0, 1e-12);
    EXPECT_NEAR(exact_expectation(c, Observable::single(1.0, "ZI")), 0.0, 1e-12);
  }
}

TEST(Circuit, SimulationMatchesMatrixOracle) {
  Rng rng(21);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const Circuit c = testing::random_circuit(n, 5, rng);
      const Observable o = testing::random_observable(n, 3, rng);
      EXPECT_NEAR(exact_expectation(c, o), oracle_expectation(c, o), 1e-10);
    }
  }
}

TEST(Circuit, QubitOrderOnNonAdjacentPair) {
  Circuit c(3);
  c.add(SingleGate{2, Vector3::UnitY(), 0.7});
  c.add(CanonicalGate{2, 0, ThetaVector{0.3, 0.2, 0.1}, false});
  const Observable o({{1.0, "XIZ"}, {0.5, "YZY"}});
  EXPECT_NEAR(exact_expectation(c, o), oracle_expectation(c, o), 1e-12);
}

TEST(Circuit, ObservableWidthMismatch) {
  EXPECT_THROW(exact_expectation(Circuit(2), Observable::single(1.0, "Z")), std::invalid_argument);
}

TEST(GateBased, CostExamples) {
  EXPECT_NEAR(gate_based_cost(pauli_coefficients(landmarks::kOrigin)), 1.0, 1e-15);
  EXPECT_NEAR(gate_based_cost(pauli_coefficients(landmarks::kA1)), 2.0, 1e-12);
  EXPECT_NEAR(gate_based_cost(pauli_coefficients(landmarks::kA2)), 4.0, 1e-12);
  EXPECT_NEAR(gate_based_cost(pauli_coefficients(landmarks::kA3)), 4.0, 1e-12);
}

TEST(GateBased, ExactSumEqualsExpectation) {
  Rng rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    const Circuit c = testing::random_circuit(3, 3, rng);
    const Observable o = testing::random_observable(3, 2, rng);
    std::size_t idx = 0;
    while (!std::holds_alternative<CanonicalGate>(c.gates()[idx])) ++idx;
    const GateBasedEstimator est(c, idx, o);
    EXPECT_NEAR(est.exact_sum(), oracle_expectation(c, o), 1e-10);
  }
}

TEST(GateBased, MonteCarloConverges) {
  const Circuit c = testing::bell_circuit(false);
  const Observable o = Observable::single(1.0, "ZZ");
  Rng rng(23);
  const std::size_t shots = 20000;
  const double est = gate_based_estimate(c, 2, o, shots, rng);
  // Each sample is bounded by G = 2, so the standard error is at most 2/sqrt(S).
  EXPECT_NEAR(est, 1.0, 5 * 2.0 / std::sqrt(static_cast<double>(shots)));
}

TEST(GateBased, RejectsNonCanonicalIndex) {
  const Circuit c = testing::bell_circuit(false);
  Rng rng(1);
  EXPECT_THROW(gate_based_estimate(c, 0, Observable::single(1.0, "ZZ"), 10, rng), std::invalid_argument);
  EXPECT_THROW(gate_based_estimate(c, 99, Observable::single(1.0, "ZZ"), 10, rng), std::invalid_argument);
  EXPECT_THROW(gate_based_estimate(c, 2, Observable::single(1.0, "ZZ"), 0, rng), std::invalid_argument);
}

TEST(Circuit, EmptyCircuitZ) {
  EXPECT_NEAR(exact_expectation(Circuit(1), Observable::single(1.0, "Z")), 1.0, 0.0);
}

TEST(Circuit, IdentityCanonicalInsertionIsInvisible) {
  Rng rng(24);
  for (int rep = 0; rep < 10; ++rep) {
    const Circuit c = testing::random_circuit(3, 4, rng);
    const Observable o = testing::random_observable(3, 3, rng);
    Circuit padded(3);
    for (const auto &g : c.gates()) {
      padded.add(g);
      padded.add(CanonicalGate{0, 2, ThetaVector{0, 0, 0}, false});
    }
    EXPECT_NEAR(exact_expectation(padded, o), exact_expectation(c, o), 1e-12);
  }
}

TEST(GateBased, CostNeverExceedsWeight) {
  Rng rng(25);
  for (int i = 0; i < 1000; ++i) {
    const auto u = pauli_coefficients(testing::random_theta(rng));
    EXPECT_LE(gate_based_cost(u), decompose(u).weight + 1e-12);
  }
}

TEST(GateBased, IdentityCutIsDeterministic) {
  Circuit c(2);
  c.add(SingleGate{0, Vector3::UnitX(), 0.4});
  c.add(CanonicalGate{0, 1, ThetaVector{0, 0, 0}, false});
  const Observable o = Observable::single(1.0, "ZI");
  Rng rng(26);
  const double exact = exact_expectation(c, o);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(gate_based_estimate(c, 1, o, 1, rng), exact, 1e-12);
}

TEST(GateBased, UnbiasedOverRepetitions) {
  Rng build(27);
  const Circuit c = testing::random_circuit(3, 3, build);
  const Observable o = testing::random_observable(3, 3, build);
  std::size_t idx = 0;
  while (!std::holds_alternative<CanonicalGate>(c.gates()[idx])) ++idx;
  Rng rng(28);
  const int reps = 50;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double m = gate_based_estimate(c, idx, o, 10000, rng);
    sum += m;
    sum2 += m * m;
  }
  const double grand = sum / reps;
  const double se = std::sqrt((sum2 / reps - grand * grand) / (reps - 1));
  EXPECT_LT(std::abs(grand - exact_expectation(c, o)), 4 * se + 1e-12);
}

}  // namespace
}  // namespace quasicut
