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

// The sixteen single-qubit basis channels sigma_a, A_aa', B_aa' (a < a'):
//   sigma_a : rho -> sigma_a rho sigma_a
//   A_aa'   : rho -> (sigma_a rho sigma_a' + sigma_a' rho sigma_a) / 2
//   B_aa'   : rho -> (sigma_a rho sigma_a' - sigma_a' rho sigma_a) / (2i)
// together with programs that realize each one stochastically with unit
// total quasiprobability mass using rotations and signed measurements.

#include <algorithm>
#include <array>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "quasicut/algebra.hpp"
#include "quasicut/rng.hpp"

namespace quasicut {

enum class BasisKind { kPauli, kA, kB };

struct BasisChannelId {
  BasisKind kind = BasisKind::kPauli;
  int alpha = 0;
  int alpha_prime = 0;

  static BasisChannelId pauli(int a) {
    BasisChannelId id{BasisKind::kPauli, a, a};
    id.validate();
    return id;
  }
  static BasisChannelId a_channel(int a, int b) {
    BasisChannelId id{BasisKind::kA, a, b};
    id.validate();
    return id;
  }
  static BasisChannelId b_channel(int a, int b) {
    BasisChannelId id{BasisKind::kB, a, b};
    id.validate();
    return id;
  }

  void validate() const {
    if (kind == BasisKind::kPauli) {
      if (alpha < 0 || alpha > 3) throw std::invalid_argument("pauli channel index out of range");
      return;
    }
    if (!(0 <= alpha && alpha < alpha_prime && alpha_prime <= 3)) {
      throw std::invalid_argument("A/B channels need 0 <= alpha < alpha' <= 3");
    }
  }

  /// Position in the canonical 16-element ordering
  /// P0..P3, A01, A02, A03, A12, A13, A23, B01, ..., B23.
  int index() const {
    if (kind == BasisKind::kPauli) return alpha;
    static constexpr int kPair[4][4] = {
        {-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
    return (kind == BasisKind::kA ? 4 : 10) + kPair[alpha][alpha_prime];
  }

  /// "P0".."P3", "A01".., "B23".
  std::string label() const {
    switch (kind) {
      case BasisKind::kPauli: return "P" + std::to_string(alpha);
      case BasisKind::kA: return "A" + std::to_string(alpha) + std::to_string(alpha_prime);
      case BasisKind::kB: return "B" + std::to_string(alpha) + std::to_string(alpha_prime);
    }
    return {};
  }

  static BasisChannelId parse(std::string_view text) {
    auto digit = [&](std::size_t k) {
      if (k >= text.size() || text[k] < '0' || text[k] > '3') {
        throw std::invalid_argument("malformed basis channel label '" + std::string(text) + "'");
      }
      return text[k] - '0';
    };
    if (text.size() == 2 && text[0] == 'P') return pauli(digit(1));
    if (text.size() == 3 && text[0] == 'A') return a_channel(digit(1), digit(2));
    if (text.size() == 3 && text[0] == 'B') return b_channel(digit(1), digit(2));
    throw std::invalid_argument("malformed basis channel label '" + std::string(text) + "'");
  }

  friend bool operator==(const BasisChannelId &, const BasisChannelId &) = default;
};

inline std::array<BasisChannelId, 16> all_basis_channels() {
  std::array<BasisChannelId, 16> out;
  int k = 0;
  for (int a = 0; a < 4; ++a) out[k++] = BasisChannelId::pauli(a);
  for (BasisKind kind : {BasisKind::kA, BasisKind::kB}) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) out[k++] = BasisChannelId{kind, a, b};
    }
  }
  return out;
}

/// Operator action of A_ab or B_ab for any ordered pair, including a >= b.
inline OperatorMap pair_channel_action(BasisKind kind, int a, int b) {
  const Matrix2 sa = pauli_matrix(a);
  const Matrix2 sb = pauli_matrix(b);
  switch (kind) {
    case BasisKind::kPauli:
      return [sa](const ComplexMatrix &rho) { return ComplexMatrix(sa * rho * sa); };
    case BasisKind::kA:
      return [sa, sb](const ComplexMatrix &rho) {
        return ComplexMatrix(0.5 * (sa * rho * sb + sb * rho * sa));
      };
    case BasisKind::kB:
      return [sa, sb](const ComplexMatrix &rho) {
        return ComplexMatrix((sa * rho * sb - sb * rho * sa) / cd(0.0, 2.0));
      };
  }
  throw std::logic_error("unknown basis kind");
}

inline OperatorMap basis_action(const BasisChannelId &id) {
  id.validate();
  return pair_channel_action(id.kind, id.alpha, id.alpha_prime);
}

inline Ptm basis_ptm(const BasisChannelId &id) {
  static const std::array<Ptm, 16> table = [] {
    std::array<Ptm, 16> t;
    for (const auto &b : all_basis_channels()) t[b.index()] = ptm_from_action(basis_action(b), 1);
    return t;
  }();
  id.validate();
  return table[id.index()];
}

/// Rank of the flattened PTMs of the given channels.
inline int basis_rank(std::span<const BasisChannelId> ids) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(ids.size()), 16);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const Eigen::MatrixXd m = basis_ptm(ids[k]).matrix;
    rows.row(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::RowVectorXd>(m.data(), 16);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

/// True iff the sixteen basis PTMs span the space of single-qubit superoperators.
inline bool check_basis_completeness(std::span<const BasisChannelId> ids) {
  return ids.size() == 16 && basis_rank(ids) == 16;
}

inline bool check_basis_completeness() {
  const auto ids = all_basis_channels();
  return check_basis_completeness(ids);
}

// ---------------------------------------------------------------------------
// Realization programs.

struct UnitaryStep {
  Matrix2 u;
};

/// Signed measurement along +-axis: the outcome with probability p_+- keeps
/// the projected state and multiplies the weight by c_+-. A zero coefficient
/// discards the branch.
struct SignedMeasurementStep {
  Vector3 axis;
  cd c_plus{1.0, 0.0};
  cd c_minus{-1.0, 0.0};
};

struct CoinBranch;

struct CoinStep {
  std::vector<CoinBranch> branches;
};

struct RealizationStep {
  std::variant<UnitaryStep, SignedMeasurementStep, CoinStep> op;
};

struct CoinBranch {
  double probability = 0.0;
  int sign = 1;
  std::vector<RealizationStep> steps;
};

using RealizationProgram = std::vector<RealizationStep>;

inline void validate_program(std::span<const RealizationStep> program) {
  for (const auto &step : program) {
    if (const auto *m = std::get_if<SignedMeasurementStep>(&step.op)) {
      if (std::abs(m->axis.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("measurement axis must be a unit vector");
      }
      for (cd c : {m->c_plus, m->c_minus}) {
        if (c != cd{0.0, 0.0} && std::abs(std::abs(c) - 1.0) > 1e-12) {
          throw std::invalid_argument("measurement coefficients must be zero or unit modulus");
        }
      }
    } else if (const auto *coin = std::get_if<CoinStep>(&step.op)) {
      double total = 0.0;
      for (const auto &b : coin->branches) {
        if (b.probability < 0.0 || (b.sign != 1 && b.sign != -1)) {
          throw std::invalid_argument("coin branches need p >= 0 and sign +-1");
        }
        total += b.probability;
        validate_program(b.steps);
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("coin probabilities must sum to 1");
      }
    }
  }
}

namespace detail {

inline Vector3 unit_axis(int a) {
  Vector3 n = Vector3::Zero();
  n[a - 1] = 1.0;
  return n;
}

/// epsilon with sigma_a sigma_b = i epsilon sigma_c, for distinct a, b in 1..3.
inline int levi_civita(int a, int b) { return ((b - a + 3) % 3 == 1) ? 1 : -1; }

inline RealizationProgram build_program(const BasisChannelId &id) {
  using namespace std::complex_literals;
  const int a = id.alpha;
  const int b = id.alpha_prime;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  auto coin = [](Matrix2 plus, Matrix2 minus) {
    CoinStep c;
    c.branches.push_back(CoinBranch{0.5, 1, {RealizationStep{UnitaryStep{plus}}}});
    c.branches.push_back(CoinBranch{0.5, -1, {RealizationStep{UnitaryStep{minus}}}});
    return RealizationProgram{RealizationStep{std::move(c)}};
  };

  switch (id.kind) {
    case BasisKind::kPauli:
      return {RealizationStep{UnitaryStep{pauli_matrix(a)}}};
    case BasisKind::kA:
      if (a == 0) {
        return {RealizationStep{SignedMeasurementStep{unit_axis(b), 1.0, -1.0}}};
      }
      // (sigma_a +- sigma_b)/sqrt2 are unitary since the two Paulis anticommute.
      return coin(inv_sqrt2 * (pauli_matrix(a) + pauli_matrix(b)),
                  inv_sqrt2 * (pauli_matrix(a) - pauli_matrix(b)));
    case BasisKind::kB:
      if (a == 0) {
        // (sigma_0 +- i sigma_b)/sqrt2 = exp(+-i pi/4 sigma_b).
        return coin(inv_sqrt2 * (Matrix2::Identity() + 1i * pauli_matrix(b)),
                    inv_sqrt2 * (Matrix2::Identity() - 1i * pauli_matrix(b)));
      } else {
        // (sigma_a +- i sigma_b)/2 = sigma_a Pi(-+ eps n_c): measure along
        // -eps n_c with weights (1, -1), then flip with sigma_a.
        const int c = 6 - a - b;
        const int eps = levi_civita(a, b);
        return {RealizationStep{SignedMeasurementStep{static_cast<double>(-eps) * unit_axis(c), 1.0, -1.0}},
                RealizationStep{UnitaryStep{pauli_matrix(a)}}};
      }
  }
  throw std::logic_error("unknown basis kind");
}

}  // namespace detail

inline const RealizationProgram &realization_program(const BasisChannelId &id) {
  static const std::array<RealizationProgram, 16> table = [] {
    std::array<RealizationProgram, 16> t;
    for (const auto &b : all_basis_channels()) {
      t[b.index()] = detail::build_program(b);
      validate_program(t[b.index()]);
    }
    return t;
  }();
  id.validate();
  return table[id.index()];
}

/// Runs a program on one qubit of a state vector, returning the accumulated
/// weight. The state stays normalized, or becomes the zero state with weight 0.
inline cd run_program(std::span<const RealizationStep> program, StateVector &state, int qubit,
                      Rng &rng) {
  cd weight{1.0, 0.0};
  for (const auto &step : program) {
    if (state.is_zero()) return cd{0.0, 0.0};
    if (const auto *u = std::get_if<UnitaryStep>(&step.op)) {
      state.apply_1q(qubit, u->u);
    } else if (const auto *m = std::get_if<SignedMeasurementStep>(&step.op)) {
      const double mean = state.axis_expectation(qubit, m->axis) / state.norm2();
      const double p_plus = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
      const bool plus = rng.uniform() < p_plus;
      const cd c = plus ? m->c_plus : m->c_minus;
      if (c == cd{0.0, 0.0}) {
        state.set_zero();
        return cd{0.0, 0.0};
      }
      state.apply_1q(qubit, axis_projector(plus ? Vector3(m->axis) : Vector3(-m->axis)));
      state.normalize();
      weight *= c;
    } else {
      const auto &coin = std::get<CoinStep>(step.op);
      const double draw = rng.uniform();
      double cumulative = 0.0;
      const CoinBranch *chosen = &coin.branches.back();
      for (const auto &branch : coin.branches) {
        cumulative += branch.probability;
        if (draw < cumulative) {
          chosen = &branch;
          break;
        }
      }
      weight *= static_cast<double>(chosen->sign);
      weight *= run_program(chosen->steps, state, qubit, rng);
    }
  }
  return state.is_zero() ? cd{0.0, 0.0} : weight;
}

struct RealizationOutcome {
  StateVector post_state;
  cd weight;
};

/// One stochastic realization of a basis channel on a single-qubit state.
/// E[weight * |post><post|] equals the basis channel applied to the input.
inline RealizationOutcome realize(const BasisChannelId &id, const StateVector &state, Rng &rng) {
  if (state.num_qubits() != 1) {
    throw std::invalid_argument("realize acts on single-qubit states");
  }
  RealizationOutcome out{state, cd{0.0, 0.0}};
  if (state.is_zero()) return out;
  out.weight = run_program(realization_program(id), out.post_state, 0, rng);
  return out;
}

}  // namespace quasicut
