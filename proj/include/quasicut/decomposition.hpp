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

// Quasiprobability decomposition of a canonical two-qubit unitary channel
// into tensor products of the sixteen local basis channels:
//
//   U = sum_a |u_a|^2 sigma_a (x) sigma_a
//     + sum_{a<b} r_ab (A_ab (x) A_ab - B_ab (x) B_ab)
//     + sum_{a<b} s_ab (A_ab (x) B_ab + B_ab (x) A_ab)
//
// with r_ab = u_a u_b* + u_b u_a* and s_ab = i (u_a u_b* - u_b u_a*), both real.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "quasicut/algebra.hpp"
#include "quasicut/canonical.hpp"
#include "quasicut/local_basis.hpp"

namespace quasicut {

/// Basis channels applied to one qubit in order, first element first.
using ChannelSequence = std::vector<BasisChannelId>;

struct QPTerm {
  cd coefficient;
  ChannelSequence left;
  ChannelSequence right;
};

struct QPDecomposition {
  /// Pauli coefficients of the decomposed gate, when it is a single gate.
  std::optional<PauliCoeffs> source;
  std::vector<QPTerm> terms;
  /// Sum of |coefficient| over terms.
  double weight = 0.0;

  double sum_abs_coefficients() const {
    double s = 0.0;
    for (const auto &t : terms) s += std::abs(t.coefficient);
    return s;
  }
};

inline constexpr double kDropThreshold = 1e-14;

inline QPDecomposition decompose(const PauliCoeffs &u) {
  if (!u.is_normalized()) {
    throw std::invalid_argument("Pauli coefficients must satisfy sum |u_a|^2 = 1");
  }
  QPDecomposition d;
  d.source = u;
  auto add = [&](cd c, BasisChannelId left, BasisChannelId right) {
    if (std::abs(c.imag()) > 1e-12) {
      throw std::logic_error("decomposition coefficient is not real");
    }
    const double re = c.real();
    if (std::abs(re) < kDropThreshold) return;
    d.terms.push_back(QPTerm{cd{re, 0.0}, {left}, {right}});
  };
  using namespace std::complex_literals;
  for (int a = 0; a < 4; ++a) {
    add(std::norm(u[a]), BasisChannelId::pauli(a), BasisChannelId::pauli(a));
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const cd x = u[a] * std::conj(u[b]);
      const cd y = u[b] * std::conj(u[a]);
      const cd r = x + y;
      const cd s = 1i * (x - y);
      const auto ca = BasisChannelId::a_channel(a, b);
      const auto cb = BasisChannelId::b_channel(a, b);
      add(r, ca, ca);
      add(-r, cb, cb);
      add(s, ca, cb);
      add(s, cb, ca);
    }
  }
  d.weight = d.sum_abs_coefficients();
  return d;
}

/// 1 + sum_{a != b} (|u_a u_b* + u_b u_a*| + |u_a u_b* - u_b u_a*|).
inline double weight_formula(const PauliCoeffs &u) {
  double w = 1.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const cd x = u[a] * std::conj(u[b]);
      const cd y = u[b] * std::conj(u[a]);
      w += std::abs(x + y) + std::abs(x - y);
    }
  }
  return w;
}

inline Ptm sequence_ptm(const ChannelSequence &seq) {
  Ptm p = Ptm::identity(1);
  for (const auto &id : seq) p = compose(basis_ptm(id), p);
  return p;
}

/// sum_i c_i PTM(left_i) (x) PTM(right_i).
inline Ptm reconstruct_ptm(const QPDecomposition &d) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(16, 16);
  for (const auto &t : d.terms) {
    const Eigen::MatrixXd l = sequence_ptm(t.left).matrix;
    const Eigen::MatrixXd r = sequence_ptm(t.right).matrix;
    acc += t.coefficient * Eigen::kroneckerProduct(l, r).eval().cast<cd>();
  }
  if (acc.imag().cwiseAbs().maxCoeff() > 1e-9) {
    throw std::domain_error("reconstructed PTM has an imaginary part");
  }
  return Ptm{2, acc.real()};
}

/// PTM of rho -> U rho U^dagger for U = sum_a u_a sigma_a (x) sigma_a.
inline Ptm exact_channel_ptm(const PauliCoeffs &u) {
  return unitary_ptm(unitary_from_coeffs(u));
}

inline double max_abs_deviation(const Ptm &a, const Ptm &b) {
  return (a.matrix - b.matrix).cwiseAbs().maxCoeff();
}

/// Decomposition of the channel d2 o d1: all products c2_i c1_j with the
/// channel sequences of d1 followed by those of d2. The weight is W2 * W1.
inline QPDecomposition compose(const QPDecomposition &d2, const QPDecomposition &d1) {
  QPDecomposition out;
  out.terms.reserve(d2.terms.size() * d1.terms.size());
  for (const auto &t2 : d2.terms) {
    for (const auto &t1 : d1.terms) {
      QPTerm t{t2.coefficient * t1.coefficient, t1.left, t1.right};
      t.left.insert(t.left.end(), t2.left.begin(), t2.left.end());
      t.right.insert(t.right.end(), t2.right.begin(), t2.right.end());
      out.terms.push_back(std::move(t));
    }
  }
  out.weight = d2.weight * d1.weight;
  return out;
}

struct LegacyDecomposition {
  QPDecomposition decomposition;
  /// prod_a (1 + 2|sin 2 theta_a|).
  double cost = 1.0;
};

/// Per-axis decomposition: each exp(i theta_a sigma_a (x) sigma_a) with
/// theta_a != 0 is decomposed on its own (u_0 = cos, u_a = i sin) and the
/// factors are composed.
inline LegacyDecomposition legacy_decompose(const ThetaVector &theta) {
  if (!theta.is_finite()) {
    throw std::invalid_argument("theta must be finite");
  }
  LegacyDecomposition out;
  std::optional<QPDecomposition> acc;
  for (int a = 1; a <= 3; ++a) {
    const double t = theta[a - 1];
    if (t == 0.0) continue;
    PauliCoeffs factor{{cd{std::cos(t), 0.0}, cd{}, cd{}, cd{}}};
    factor[a] = cd{0.0, std::sin(t)};
    const cd x = factor[0] * std::conj(factor[a]);
    const cd y = factor[a] * std::conj(factor[0]);
    out.cost *= 1.0 + 2.0 * std::abs(x - y);
    acc = acc ? compose(decompose(factor), *acc) : decompose(factor);
  }
  out.decomposition = acc ? std::move(*acc) : decompose(PauliCoeffs{});
  return out;
}

inline double legacy_cost(const ThetaVector &theta) {
  double c = 1.0;
  for (int a = 0; a < 3; ++a) c *= 1.0 + 2.0 * std::abs(std::sin(2.0 * theta[a]));
  return c;
}

}  // namespace quasicut
