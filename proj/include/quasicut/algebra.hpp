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

// Complex matrices, Pauli algebra, Pauli transfer matrices and dense states.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quasicut {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector3 = Eigen::Vector3d;

inline constexpr double kTolerance = 1e-10;
inline constexpr int kMaxQubits = 12;

inline Matrix2 pauli_matrix(int alpha) {
  using namespace std::complex_literals;
  Matrix2 m;
  switch (alpha) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -1i, 1i, 0.0; break;
    case 3: m << 1.0, 0.0, 0.0, -1.0; break;
    default:
      throw std::out_of_range("pauli index must be in 0..3, got " + std::to_string(alpha));
  }
  return m;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b,
                  double tol = kTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

/// Spin operator n.sigma for a real axis.
inline Matrix2 axis_operator(const Vector3 &n) {
  return n[0] * pauli_matrix(1) + n[1] * pauli_matrix(2) + n[2] * pauli_matrix(3);
}

/// R(n, theta) = exp(-i theta n.sigma) for a unit axis n.
inline Matrix2 rotation(const Vector3 &n, double theta) {
  using namespace std::complex_literals;
  return std::cos(theta) * Matrix2::Identity() - 1i * std::sin(theta) * axis_operator(n);
}

/// Projector onto the +1 eigenspace of n.sigma.
inline Matrix2 axis_projector(const Vector3 &n) {
  return 0.5 * (Matrix2::Identity() + axis_operator(n));
}

// ---------------------------------------------------------------------------
// Pauli strings.

/// Dense-index Pauli string. Character k acts on qubit k, and qubit 0 is the
/// most significant bit of a basis index (the leftmost Kronecker factor).
struct PauliString {
  int num_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int y_count = 0;

  static PauliString parse(std::string_view text) {
    if (text.empty() || text.size() > 63) {
      throw std::invalid_argument("pauli string must have 1..63 characters");
    }
    PauliString p;
    p.num_qubits = static_cast<int>(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
      std::uint64_t bit = std::uint64_t{1} << (text.size() - 1 - k);
      switch (text[k]) {
        case 'I': break;
        case 'X': p.x_mask |= bit; break;
        case 'Y': p.x_mask |= bit; p.z_mask |= bit; ++p.y_count; break;
        case 'Z': p.z_mask |= bit; break;
        default:
          throw std::invalid_argument("invalid pauli character '" + std::string(1, text[k]) + "'");
      }
    }
    return p;
  }

  /// Phase of P|i> = phase(i) |i ^ x_mask>.
  cd phase(std::uint64_t index) const {
    static constexpr cd kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cd p = kIPowers[y_count & 3];
    return (std::popcount(index & z_mask) & 1) ? -p : p;
  }

  ComplexMatrix matrix() const {
    const std::size_t dim = std::size_t{1} << num_qubits;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i ^ x_mask, i) = phase(i);
    }
    return m;
  }
};

/// Matrix of the tensor product sigma_{digits[0]} (x) sigma_{digits[1]} (x) ...
inline ComplexMatrix pauli_product(std::span<const int> digits) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (int d : digits) {
    m = kron(m, pauli_matrix(d));
  }
  return m;
}

/// Pauli basis element sigma_k of n qubits; k is read in base 4, most
/// significant digit on qubit 0.
inline ComplexMatrix pauli_basis_element(std::size_t k, int num_qubits) {
  std::vector<int> digits(num_qubits);
  for (int q = num_qubits - 1; q >= 0; --q) {
    digits[q] = static_cast<int>(k & 3);
    k >>= 2;
  }
  return pauli_product(digits);
}

// ---------------------------------------------------------------------------
// Observables.

struct PauliTerm {
  double coeff = 0.0;
  std::string pauli;
};

class Observable {
 public:
  Observable() = default;
  explicit Observable(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
      throw std::invalid_argument("observable needs at least one term");
    }
    parsed_.reserve(terms_.size());
    for (const auto &t : terms_) {
      if (!std::isfinite(t.coeff)) {
        throw std::invalid_argument("observable coefficient must be finite");
      }
      parsed_.push_back(PauliString::parse(t.pauli));
      if (parsed_.back().num_qubits != parsed_.front().num_qubits) {
        throw std::invalid_argument("observable terms have different lengths");
      }
      o_max_ += std::abs(t.coeff);
    }
  }

  static Observable single(double coeff, std::string pauli) {
    return Observable({PauliTerm{coeff, std::move(pauli)}});
  }

  int num_qubits() const { return parsed_.empty() ? 0 : parsed_.front().num_qubits; }
  const std::vector<PauliTerm> &terms() const { return terms_; }
  const std::vector<PauliString> &strings() const { return parsed_; }
  /// Sum of |coeff|, an upper bound on the largest eigenvalue magnitude.
  double o_max() const { return o_max_; }

  ComplexMatrix matrix() const {
    const std::size_t dim = std::size_t{1} << num_qubits();
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      m += terms_[k].coeff * parsed_[k].matrix();
    }
    return m;
  }

 private:
  std::vector<PauliTerm> terms_;
  std::vector<PauliString> parsed_;
  double o_max_ = 0.0;
};

// ---------------------------------------------------------------------------
// Pauli transfer matrices.

struct Ptm {
  int num_qubits = 1;
  Eigen::MatrixXd matrix;

  static Ptm identity(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << (2 * num_qubits);
    return Ptm{num_qubits, Eigen::MatrixXd::Identity(dim, dim)};
  }
};

/// Later-after-earlier composition: the PTM of (second o first).
inline Ptm compose(const Ptm &second, const Ptm &first) {
  if (second.num_qubits != first.num_qubits) {
    throw std::invalid_argument("cannot compose PTMs of different qubit counts");
  }
  return Ptm{first.num_qubits, second.matrix * first.matrix};
}

using OperatorMap = std::function<ComplexMatrix(const ComplexMatrix &)>;

/// Entry (j, k) is Tr[sigma_j apply(sigma_k)] / 2^n. Throws std::domain_error
/// if the map does not preserve Hermiticity (imaginary part above tolerance)
/// or produces non-finite values.
inline Ptm ptm_from_action(const OperatorMap &apply, int num_qubits) {
  if (num_qubits < 1 || num_qubits > 2) {
    throw std::invalid_argument("PTMs are supported for 1 or 2 qubits");
  }
  const std::size_t dim = std::size_t{1} << (2 * num_qubits);
  const double norm = static_cast<double>(std::size_t{1} << num_qubits);
  std::vector<ComplexMatrix> basis;
  basis.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    basis.push_back(pauli_basis_element(k, num_qubits));
  }
  Ptm out{num_qubits, Eigen::MatrixXd(dim, dim)};
  for (std::size_t k = 0; k < dim; ++k) {
    const ComplexMatrix image = apply(basis[k]);
    for (std::size_t j = 0; j < dim; ++j) {
      // sigma_j is Hermitian, so Tr[sigma_j X] = sum conj(sigma_j) .* X.
      const cd entry = basis[j].conjugate().cwiseProduct(image).sum() / norm;
      if (!std::isfinite(entry.real()) || !std::isfinite(entry.imag())) {
        throw std::domain_error("non-finite PTM entry");
      }
      if (std::abs(entry.imag()) > kTolerance) {
        throw std::domain_error("map does not preserve Hermiticity");
      }
      out.matrix(j, k) = entry.real();
    }
  }
  return out;
}

inline Ptm unitary_ptm(const ComplexMatrix &u) {
  const int n = u.rows() == 2 ? 1 : 2;
  return ptm_from_action([&](const ComplexMatrix &x) { return ComplexMatrix(u * x * u.adjoint()); }, n);
}

// ---------------------------------------------------------------------------
// Dense states.

/// Pure state vector with a tracked squared norm. A vector flagged as zero
/// represents the discarded branch |0>> and contributes nothing.
class StateVector {
 public:
  StateVector() = default;

  /// |0...0>.
  explicit StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw std::length_error("state vectors support 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, cd{0.0, 0.0});
    amps_[0] = 1.0;
    norm2_ = 1.0;
  }

  static StateVector from_amplitudes(std::vector<cd> amps) {
    const std::size_t dim = amps.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
      throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    StateVector s;
    s.num_qubits_ = std::countr_zero(dim);
    if (s.num_qubits_ > kMaxQubits) {
      throw std::length_error("too many qubits");
    }
    s.amps_ = std::move(amps);
    s.norm2_ = s.actual_norm2();
    s.zero_ = s.norm2_ == 0.0;
    return s;
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cd> &amplitudes() const { return amps_; }
  double norm2() const { return norm2_; }
  bool is_zero() const { return zero_; }

  double actual_norm2() const {
    double s = 0.0;
    for (const cd &a : amps_) s += std::norm(a);
    return s;
  }

  void set_zero() {
    std::fill(amps_.begin(), amps_.end(), cd{0.0, 0.0});
    norm2_ = 0.0;
    zero_ = true;
  }

  void normalize() {
    if (zero_) return;
    const double n = actual_norm2();
    if (n == 0.0) {
      set_zero();
      return;
    }
    const double inv = 1.0 / std::sqrt(n);
    for (cd &a : amps_) a *= inv;
    norm2_ = 1.0;
  }

  /// Applies a 2x2 matrix (not necessarily unitary) to qubit q. The norm
  /// tracker is only kept for unitary matrices; callers of non-unitary
  /// matrices renormalize explicitly.
  void apply_1q(int q, const Matrix2 &m) {
    check_qubit(q);
    const std::size_t stride = std::size_t{1} << (num_qubits_ - 1 - q);
    const cd m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const cd a0 = amps_[i];
        const cd a1 = amps_[i + stride];
        amps_[i] = m00 * a0 + m01 * a1;
        amps_[i + stride] = m10 * a0 + m11 * a1;
      }
    }
  }

  /// Applies a 4x4 matrix in the basis |b(q0) b(q1)>.
  void apply_2q(int q0, int q1, const Matrix4 &m) {
    check_qubit(q0);
    check_qubit(q1);
    if (q0 == q1) {
      throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    const std::size_t b0 = std::size_t{1} << (num_qubits_ - 1 - q0);
    const std::size_t b1 = std::size_t{1} << (num_qubits_ - 1 - q1);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & (b0 | b1)) continue;
      const std::size_t idx[4] = {i, i | b1, i | b0, i | b0 | b1};
      const cd in[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
      for (int r = 0; r < 4; ++r) {
        amps_[idx[r]] = m(r, 0) * in[0] + m(r, 1) * in[1] + m(r, 2) * in[2] + m(r, 3) * in[3];
      }
    }
  }

  /// <psi| P |psi> without normalization.
  cd pauli_expectation(const PauliString &p) const {
    check_width(p.num_qubits);
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      acc += std::conj(amps_[i ^ p.x_mask]) * p.phase(i) * amps_[i];
    }
    return acc;
  }

  /// <psi| n.sigma on qubit q |psi> without normalization.
  double axis_expectation(int q, const Vector3 &n) const {
    check_qubit(q);
    const std::size_t stride = std::size_t{1} << (num_qubits_ - 1 - q);
    double zz = 0.0;
    cd off{0.0, 0.0};
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        zz += std::norm(amps_[i]) - std::norm(amps_[i + stride]);
        off += std::conj(amps_[i]) * amps_[i + stride];
      }
    }
    // <0|rho|1> = sum conj(a1) a0 ; <sigma_x> = 2 Re<0|rho|1>, <sigma_y> = -2 Im<0|rho|1>.
    const cd rho01 = std::conj(off);
    return n[0] * 2.0 * rho01.real() - n[1] * 2.0 * rho01.imag() + n[2] * zz;
  }

  /// Tr[O |psi><psi|].
  double expectation(const Observable &obs) const {
    if (zero_) return 0.0;
    check_width(obs.num_qubits());
    cd acc{0.0, 0.0};
    for (std::size_t k = 0; k < obs.terms().size(); ++k) {
      acc += obs.terms()[k].coeff * pauli_expectation(obs.strings()[k]);
    }
    return acc.real();
  }

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
      throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
    }
  }
  void check_width(int n) const {
    if (n != num_qubits_) {
      throw std::invalid_argument("qubit count mismatch: " + std::to_string(n) + " vs " +
                                  std::to_string(num_qubits_));
    }
  }

  int num_qubits_ = 0;
  std::vector<cd> amps_;
  double norm2_ = 0.0;
  bool zero_ = false;
};

struct DensityMatrix {
  int num_qubits = 0;
  ComplexMatrix rho;
  bool zero = false;

  static DensityMatrix from_matrix(ComplexMatrix m) {
    const auto dim = static_cast<std::size_t>(m.rows());
    if (m.rows() != m.cols() || dim < 2 || !std::has_single_bit(dim)) {
      throw std::invalid_argument("density matrix must be square with power-of-two dimension");
    }
    DensityMatrix d{std::countr_zero(dim), std::move(m), false};
    d.zero = d.rho.cwiseAbs().maxCoeff() == 0.0;
    return d;
  }

  double trace() const { return rho.trace().real(); }
  bool is_hermitian(double tol = 1e-12) const { return approx_equal(rho, rho.adjoint(), tol); }

  double expectation(const Observable &obs) const {
    if (zero) return 0.0;
    if (obs.num_qubits() != num_qubits) {
      throw std::invalid_argument("qubit count mismatch");
    }
    cd acc{0.0, 0.0};
    for (std::size_t k = 0; k < obs.terms().size(); ++k) {
      const PauliString &p = obs.strings()[k];
      cd tr{0.0, 0.0};
      for (Eigen::Index j = 0; j < rho.rows(); ++j) {
        tr += p.phase(static_cast<std::uint64_t>(j)) * rho(j, static_cast<Eigen::Index>(j ^ p.x_mask));
      }
      acc += obs.terms()[k].coeff * tr;
    }
    return acc.real();
  }
};

/// |psi><psi|, keeping the subnormalization of the vector.
inline DensityMatrix to_density(const StateVector &s) {
  const Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(),
                                              static_cast<Eigen::Index>(s.dim()));
  DensityMatrix d{s.num_qubits(), v * v.adjoint(), s.is_zero()};
  return d;
}

/// Recovers a vector from a rank-one density matrix, fixing the global phase
/// so that the largest-weight amplitude is real and positive.
inline StateVector to_pure(const DensityMatrix &d) {
  if (d.zero) {
    StateVector s = StateVector::from_amplitudes(std::vector<cd>(d.rho.rows(), cd{0.0, 0.0}));
    return s;
  }
  Eigen::Index k = 0;
  d.rho.diagonal().real().maxCoeff(&k);
  const double pivot = d.rho(k, k).real();
  if (pivot <= 0.0) {
    throw std::domain_error("density matrix has no positive diagonal entry");
  }
  std::vector<cd> amps(d.rho.rows());
  for (Eigen::Index i = 0; i < d.rho.rows(); ++i) {
    amps[i] = d.rho(i, k) / std::sqrt(pivot);
  }
  StateVector s = StateVector::from_amplitudes(std::move(amps));
  if (!approx_equal(to_density(s).rho, d.rho, 1e-10)) {
    throw std::domain_error("density matrix is not rank one");
  }
  return s;
}

/// A dense n-qubit state in either representation.
class QuantumState {
 public:
  QuantumState(StateVector s) : rep_(std::move(s)) {}
  QuantumState(DensityMatrix d) : rep_(std::move(d)) {}

  bool is_pure() const { return std::holds_alternative<StateVector>(rep_); }
  const StateVector &pure() const { return std::get<StateVector>(rep_); }
  const DensityMatrix &density() const { return std::get<DensityMatrix>(rep_); }

  int num_qubits() const {
    return is_pure() ? pure().num_qubits() : density().num_qubits;
  }
  bool is_zero() const { return is_pure() ? pure().is_zero() : density().zero; }

  DensityMatrix as_density() const { return is_pure() ? to_density(pure()) : density(); }

 private:
  std::variant<StateVector, DensityMatrix> rep_;
};

/// Tr[O rho]; zero states give 0.
inline double expectation(const QuantumState &state, const Observable &obs) {
  if (state.num_qubits() != obs.num_qubits()) {
    throw std::invalid_argument("qubit count mismatch between state and observable");
  }
  return state.is_pure() ? state.pure().expectation(obs) : state.density().expectation(obs);
}

}  // namespace quasicut
