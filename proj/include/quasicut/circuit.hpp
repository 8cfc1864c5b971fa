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

// Circuit model with cut markers, exact dense simulation, and the
// overlap-based ("gate-based") decomposition of a single two-qubit gate.

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "quasicut/algebra.hpp"
#include "quasicut/canonical.hpp"
#include "quasicut/rng.hpp"

namespace quasicut {

/// R(axis, angle) = exp(-i angle axis.sigma) on one qubit.
struct SingleGate {
  int qubit = 0;
  Vector3 axis = Vector3::UnitZ();
  double angle = 0.0;
};

/// exp[i sum theta_a sigma_a (x) sigma_a] on (q0, q1). Cut gates are
/// replaced by sampled local channels in the quasiprobability estimator.
struct CanonicalGate {
  int q0 = 0;
  int q1 = 1;
  ThetaVector theta;
  bool cut = false;
};

struct Raw1qGate {
  int qubit = 0;
  Matrix2 u = Matrix2::Identity();
};

using Gate = std::variant<SingleGate, CanonicalGate, Raw1qGate>;

class Circuit {
 public:
  explicit Circuit(int num_qubits, std::vector<Gate> gates = {}) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw std::length_error("circuits support 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    for (auto &g : gates) add(std::move(g));
  }

  Circuit &add(Gate g) {
    validate(g);
    gates_.push_back(std::move(g));
    return *this;
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate> &gates() const { return gates_; }

  std::vector<std::size_t> cut_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (const auto *c = std::get_if<CanonicalGate>(&gates_[i]); c && c->cut) out.push_back(i);
    }
    return out;
  }

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
      throw std::out_of_range("gate qubit " + std::to_string(q) + " out of range");
    }
  }

  void validate(const Gate &g) const {
    if (const auto *s = std::get_if<SingleGate>(&g)) {
      check_qubit(s->qubit);
      if (!s->axis.allFinite() || std::abs(s->axis.norm() - 1.0) > kTolerance) {
        throw std::invalid_argument("rotation axis must be a unit vector");
      }
      if (!std::isfinite(s->angle)) throw std::invalid_argument("rotation angle must be finite");
    } else if (const auto *c = std::get_if<CanonicalGate>(&g)) {
      check_qubit(c->q0);
      check_qubit(c->q1);
      if (c->q0 == c->q1) throw std::invalid_argument("canonical gate needs two distinct qubits");
      if (!c->theta.is_finite()) throw std::invalid_argument("canonical angles must be finite");
    } else {
      const auto &r = std::get<Raw1qGate>(g);
      check_qubit(r.qubit);
      if (!r.u.allFinite() || !approx_equal(r.u * r.u.adjoint(), Matrix2::Identity())) {
        throw std::invalid_argument("raw single-qubit matrix must be unitary");
      }
    }
  }

  int num_qubits_;
  std::vector<Gate> gates_;
};

inline void apply_gate(StateVector &state, const Gate &g) {
  if (const auto *s = std::get_if<SingleGate>(&g)) {
    state.apply_1q(s->qubit, rotation(s->axis, s->angle));
  } else if (const auto *c = std::get_if<CanonicalGate>(&g)) {
    state.apply_2q(c->q0, c->q1, canonical_unitary(c->theta));
  } else {
    const auto &r = std::get<Raw1qGate>(g);
    state.apply_1q(r.qubit, r.u);
  }
}

/// Final state of the circuit on |0...0>, with every gate applied exactly.
inline StateVector simulate(const Circuit &c) {
  StateVector state(c.num_qubits());
  for (const auto &g : c.gates()) apply_gate(state, g);
  return state;
}

/// <0| V^dagger O V |0>, ignoring cut markers.
inline double exact_expectation(const Circuit &c, const Observable &o) {
  if (o.num_qubits() != c.num_qubits()) {
    throw std::invalid_argument("observable width does not match circuit");
  }
  return simulate(c).expectation(o);
}

// ---------------------------------------------------------------------------
// Gate-based decomposition. The overlaps <psi_a'| P_k |psi_a> are computed by
// the dense simulator, which is only possible classically.

/// (sum_a |d_a|)^2.
inline double gate_based_cost(const PauliCoeffs &d) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) s += std::abs(d[a]);
  return s * s;
}

class GateBasedEstimator {
 public:
  GateBasedEstimator(const Circuit &c, std::size_t gate_index, const Observable &o) {
    if (gate_index >= c.gates().size() || !std::holds_alternative<CanonicalGate>(c.gates()[gate_index])) {
      throw std::invalid_argument("gate-based estimation needs a canonical gate index");
    }
    if (o.num_qubits() != c.num_qubits()) {
      throw std::invalid_argument("observable width does not match circuit");
    }
    const auto &gate = std::get<CanonicalGate>(c.gates()[gate_index]);
    d_ = pauli_coefficients(gate.theta);
    cost_ = gate_based_cost(d_);

    std::vector<StateVector> branches;
    for (int a = 0; a < 4; ++a) {
      StateVector s(c.num_qubits());
      for (std::size_t i = 0; i < c.gates().size(); ++i) {
        if (i == gate_index) {
          s.apply_1q(gate.q0, pauli_matrix(a));
          s.apply_1q(gate.q1, pauli_matrix(a));
        } else {
          apply_gate(s, c.gates()[i]);
        }
      }
      branches.push_back(std::move(s));
    }
    for (int ap = 0; ap < 4; ++ap) {
      for (int a = 0; a < 4; ++a) {
        overlaps_[ap][a] = overlap(branches[ap], branches[a], o);
        const cd coeff = std::conj(d_[ap]) * d_[a];
        if (std::abs(coeff) > 0.0) {
          pairs_.push_back(Pair{std::abs(coeff) / cost_, coeff / std::abs(coeff), overlaps_[ap][a]});
        }
      }
    }
  }

  double cost() const { return cost_; }
  const PauliCoeffs &coefficients() const { return d_; }

  /// sum_{a,a'} d_a'* d_a <psi_a'| O |psi_a>, evaluated without sampling.
  double exact_sum() const {
    cd acc{0.0, 0.0};
    for (int ap = 0; ap < 4; ++ap) {
      for (int a = 0; a < 4; ++a) acc += std::conj(d_[ap]) * d_[a] * overlaps_[ap][a];
    }
    return acc.real();
  }

  /// One sample: draws (a, a') with probability |d_a'* d_a| / G and returns
  /// G Re(phase * overlap).
  double sample(Rng &rng) const {
    const double draw = rng.uniform();
    double cumulative = 0.0;
    const Pair *chosen = &pairs_.back();
    for (const auto &p : pairs_) {
      cumulative += p.probability;
      if (draw < cumulative) {
        chosen = &p;
        break;
      }
    }
    return cost_ * (chosen->phase * chosen->overlap).real();
  }

 private:
  struct Pair {
    double probability;
    cd phase;
    cd overlap;
  };

  static cd overlap(const StateVector &left, const StateVector &right, const Observable &o) {
    cd acc{0.0, 0.0};
    const auto &l = left.amplitudes();
    const auto &r = right.amplitudes();
    for (std::size_t k = 0; k < o.terms().size(); ++k) {
      const PauliString &p = o.strings()[k];
      cd term{0.0, 0.0};
      for (std::size_t i = 0; i < r.size(); ++i) term += std::conj(l[i ^ p.x_mask]) * p.phase(i) * r[i];
      acc += o.terms()[k].coeff * term;
    }
    return acc;
  }

  PauliCoeffs d_;
  double cost_ = 1.0;
  cd overlaps_[4][4]{};
  std::vector<Pair> pairs_;
};

/// Monte-Carlo estimate of <O> using the overlap decomposition of gate i.
inline double gate_based_estimate(const Circuit &c, std::size_t gate_index, const Observable &o,
                                  std::size_t shots, Rng &rng) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const GateBasedEstimator est(c, gate_index, o);
  double sum = 0.0;
  for (std::size_t s = 0; s < shots; ++s) sum += est.sample(rng);
  return sum / static_cast<double>(shots);
}

}  // namespace quasicut
