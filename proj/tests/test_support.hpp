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

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "quasicut/quasicut.hpp"

namespace quasicut::testing {

using namespace std::complex_literals;

inline Eigen::Matrix2cd literal_pauli(int a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -1i, 1i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Eigen::MatrixXcd literal_kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// exp(i sum theta_a sigma_a (x) sigma_a) via the general matrix exponential.
inline Eigen::Matrix4cd expm_canonical(double t1, double t2, double t3) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  const double t[3] = {t1, t2, t3};
  for (int a = 1; a <= 3; ++a) h += t[a - 1] * literal_kron(literal_pauli(a), literal_pauli(a));
  return Eigen::Matrix4cd((1i * h).exp());
}

/// Pauli basis of n qubits (n = 1, 2) built from literals.
inline std::vector<Eigen::MatrixXcd> literal_pauli_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  if (n == 1) {
    for (int a = 0; a < 4; ++a) out.emplace_back(literal_pauli(a));
  } else {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) out.push_back(literal_kron(literal_pauli(a), literal_pauli(b)));
    }
  }
  return out;
}

/// Brute-force PTM of an arbitrary linear map given as a callable on matrices.
template <typename F>
Eigen::MatrixXd brute_force_ptm(F &&apply, int n) {
  const auto basis = literal_pauli_basis(n);
  const double norm = n == 1 ? 2.0 : 4.0;
  Eigen::MatrixXd out(basis.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Eigen::MatrixXcd image = apply(basis[k]);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      out(j, k) = ((basis[j] * image).trace() / norm).real();
    }
  }
  return out;
}

inline Eigen::MatrixXd conjugation_ptm(const Eigen::MatrixXcd &u) {
  return brute_force_ptm([&](const Eigen::MatrixXcd &x) { return Eigen::MatrixXcd(u * x * u.adjoint()); },
                         u.rows() == 2 ? 1 : 2);
}

inline ThetaVector random_weyl_theta(Rng &rng) {
  double v[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
  std::sort(v, v + 3, std::greater<>());
  const double q = std::numbers::pi / 4.0;
  return {q * v[0], q * v[1], q * v[2]};
}

inline ThetaVector random_theta(Rng &rng, double scale = std::numbers::pi) {
  return {scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1)};
}

/// Haar-ish random 2x2 unitary from a random axis and angle times a phase.
inline Eigen::Matrix2cd random_unitary(Rng &rng) {
  Eigen::Vector3d n(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
  n.normalize();
  const double theta = 2 * std::numbers::pi * rng.uniform();
  Eigen::Matrix2cd gen = n[0] * literal_pauli(1) + n[1] * literal_pauli(2) + n[2] * literal_pauli(3);
  return std::polar(1.0, 2 * std::numbers::pi * rng.uniform()) *
         (std::cos(theta) * Eigen::Matrix2cd::Identity() - 1i * std::sin(theta) * gen);
}

inline Eigen::Vector3d random_axis(Rng &rng) {
  Eigen::Vector3d n(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
  return n.normalized();
}

inline Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

/// Bell-pair preparation: H on qubit 0, then a CNOT written as
/// H(0) . canonical(pi/4, 0, 0) . H(0) followed by Rz(pi/4) on 0 and Rx(pi/4) on 1.
inline Circuit bell_circuit(bool cut) {
  const double q = std::numbers::pi / 4.0;
  Circuit c(2);
  c.add(Raw1qGate{0, hadamard()});
  c.add(Raw1qGate{0, hadamard()});
  c.add(CanonicalGate{0, 1, ThetaVector{q, 0, 0}, cut});
  c.add(Raw1qGate{0, hadamard()});
  c.add(SingleGate{0, Vector3::UnitZ(), q});
  c.add(SingleGate{1, Vector3::UnitX(), q});
  return c;
}

/// Full 2^n unitary of a circuit from Kronecker products of literal matrices.
inline Eigen::MatrixXcd circuit_matrix_oracle(const Circuit &c) {
  const int n = c.num_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  auto embed1 = [&](int q, const Eigen::Matrix2cd &m) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
      out = literal_kron(out, k == q ? Eigen::MatrixXcd(m) : Eigen::MatrixXcd::Identity(2, 2));
    }
    return out;
  };
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto &g : c.gates()) {
    Eigen::MatrixXcd step;
    if (const auto *s = std::get_if<SingleGate>(&g)) {
      const Eigen::Matrix2cd gen =
          s->axis[0] * literal_pauli(1) + s->axis[1] * literal_pauli(2) + s->axis[2] * literal_pauli(3);
      step = embed1(s->qubit, Eigen::Matrix2cd((-1i * s->angle * gen).exp()));
    } else if (const auto *cg = std::get_if<CanonicalGate>(&g)) {
      Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
      for (int a = 1; a <= 3; ++a) {
        h += cg->theta[a - 1] * embed1(cg->q0, literal_pauli(a)) * embed1(cg->q1, literal_pauli(a));
      }
      step = (1i * h).exp();
    } else {
      const auto &r = std::get<Raw1qGate>(g);
      step = embed1(r.qubit, r.u);
    }
    total = step * total;
  }
  return total;
}

inline Circuit random_circuit(int n, int depth, Rng &rng, bool cut_all = false) {
  Circuit c(n);
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q < n; ++q) {
      if (rng.uniform() < 0.5) {
        c.add(SingleGate{q, random_axis(rng), 2 * std::numbers::pi * rng.uniform()});
      } else {
        c.add(Raw1qGate{q, random_unitary(rng)});
      }
    }
    if (n >= 2) {
      const int a = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
      int b = static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
      if (b >= a) ++b;
      c.add(CanonicalGate{a, b, random_theta(rng), cut_all});
    }
  }
  return c;
}

inline Observable random_observable(int n, int terms, Rng &rng) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliTerm> out;
  for (int t = 0; t < terms; ++t) {
    std::string p;
    for (int q = 0; q < n; ++q) p += kLetters[rng.index(4)];
    out.push_back(PauliTerm{2 * rng.uniform() - 1, p});
  }
  return Observable(std::move(out));
}

}  // namespace quasicut::testing

namespace quasicut::testing {

/// Literal operator form of a basis channel, for any ordered pair.
inline Eigen::Matrix2cd basis_action_oracle(BasisKind kind, int a, int b, const Eigen::Matrix2cd &rho) {
  const Eigen::Matrix2cd sa = literal_pauli(a), sb = literal_pauli(b);
  switch (kind) {
    case BasisKind::kPauli: return sa * rho * sa;
    case BasisKind::kA: return 0.5 * (sa * rho * sb + sb * rho * sa);
    case BasisKind::kB: return (sa * rho * sb - sb * rho * sa) / (2.0i);
  }
  return {};
}

inline std::vector<StateVector> cardinal_states() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {StateVector::from_amplitudes({1.0, 0.0}),     StateVector::from_amplitudes({0.0, 1.0}),
          StateVector::from_amplitudes({s, s}),         StateVector::from_amplitudes({s, -s}),
          StateVector::from_amplitudes({s, cd(0, s)}), StateVector::from_amplitudes({s, cd(0, -s)})};
}

struct MonteCarloCheck {
  bool pass = true;
  /// Largest |mean - expected| / (5 SE + 1e-12) over matrix entries.
  double worst_ratio = 0.0;
  bool unit_weights = true;
  bool unit_trace = true;
};

/// Empirical mean of weight * |post><post| against the channel action.
inline MonteCarloCheck monte_carlo_basis_check(const BasisChannelId &id, const StateVector &input,
                                               std::size_t realizations, std::uint64_t seed) {
  const Eigen::Map<const Eigen::Vector2cd> v(input.amplitudes().data());
  const Eigen::Matrix2cd rho = v * v.adjoint();
  const Eigen::Matrix2cd expected = basis_action_oracle(id.kind, id.alpha, id.alpha_prime, rho);
  Eigen::Matrix4d sum = Eigen::Matrix4d::Zero(), sum2 = Eigen::Matrix4d::Zero();  // (entry, re/im)
  MonteCarloCheck out;
  Rng rng(seed);
  for (std::size_t r = 0; r < realizations; ++r) {
    const RealizationOutcome o = realize(id, input, rng);
    if (std::abs(std::abs(o.weight) - 1.0) > 1e-12 || o.post_state.is_zero()) out.unit_weights = false;
    if (std::abs(o.post_state.actual_norm2() - 1.0) > 1e-10) out.unit_trace = false;
    const Eigen::Map<const Eigen::Vector2cd> w(o.post_state.amplitudes().data());
    const Eigen::Matrix2cd sample = o.weight * (w * w.adjoint());
    for (int e = 0; e < 4; ++e) {
      const cd x = sample(e / 2, e % 2);
      sum(e, 0) += x.real();
      sum(e, 1) += x.imag();
      sum2(e, 0) += x.real() * x.real();
      sum2(e, 1) += x.imag() * x.imag();
    }
  }
  const double n = static_cast<double>(realizations);
  for (int e = 0; e < 4; ++e) {
    const cd target = expected(e / 2, e % 2);
    for (int part = 0; part < 2; ++part) {
      const double mean = sum(e, part) / n;
      const double var = std::max(0.0, sum2(e, part) / n - mean * mean) * n / (n - 1);
      const double se = std::sqrt(var / n);
      const double want = part == 0 ? target.real() : target.imag();
      const double ratio = std::abs(mean - want) / (5.0 * se + 1e-12);
      out.worst_ratio = std::max(out.worst_ratio, ratio);
      if (ratio > 1.0) out.pass = false;
    }
  }
  out.pass = out.pass && out.unit_weights && out.unit_trace;
  return out;
}

}  // namespace quasicut::testing
