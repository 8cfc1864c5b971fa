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

// Canonical (Weyl chamber) parametrization of two-qubit gates,
// U = exp[i (t1 XX + t2 YY + t3 ZZ)] = sum_a u_a sigma_a (x) sigma_a.

#include <array>
#include <cmath>
#include <numbers>

#include "quasicut/algebra.hpp"

namespace quasicut {

struct ThetaVector {
  std::array<double, 3> angles{0.0, 0.0, 0.0};

  ThetaVector() = default;
  ThetaVector(double t1, double t2, double t3) : angles{t1, t2, t3} {}

  double operator[](std::size_t k) const { return angles[k]; }
  double &operator[](std::size_t k) { return angles[k]; }
  bool is_finite() const {
    return std::isfinite(angles[0]) && std::isfinite(angles[1]) && std::isfinite(angles[2]);
  }
  ThetaVector operator-() const { return {-angles[0], -angles[1], -angles[2]}; }
  friend bool operator==(const ThetaVector &, const ThetaVector &) = default;
};

/// Coefficients u_a of a two-qubit gate in the {sigma_a (x) sigma_a} basis.
struct PauliCoeffs {
  std::array<cd, 4> u{cd{1.0, 0.0}, cd{}, cd{}, cd{}};

  cd operator[](std::size_t k) const { return u[k]; }
  cd &operator[](std::size_t k) { return u[k]; }

  double norm2() const {
    return std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]) + std::norm(u[3]);
  }
  bool is_normalized(double tol = kTolerance) const { return std::abs(norm2() - 1.0) <= tol; }

  /// Multiplies every coefficient by the same unit phase.
  PauliCoeffs with_phase(double phi) const {
    PauliCoeffs out = *this;
    for (cd &c : out.u) c *= std::polar(1.0, phi);
    return out;
  }
};

namespace detail {

inline Matrix4 pauli_pair(int alpha) {
  Matrix4 m = kron(pauli_matrix(alpha), pauli_matrix(alpha));
  return m;
}

}  // namespace detail

/// exp[i sum_a theta_a sigma_a (x) sigma_a], built as the product of the three
/// commuting factors cos(t) I + i sin(t) sigma_a (x) sigma_a.
inline Matrix4 canonical_unitary(const ThetaVector &theta) {
  using namespace std::complex_literals;
  Matrix4 u = Matrix4::Identity();
  for (int a = 1; a <= 3; ++a) {
    const double t = theta[a - 1];
    u = (std::cos(t) * Matrix4::Identity() + 1i * std::sin(t) * detail::pauli_pair(a)) * u;
  }
  return u;
}

/// Two-qubit unitary sum_a u_a sigma_a (x) sigma_a.
inline Matrix4 unitary_from_coeffs(const PauliCoeffs &u) {
  Matrix4 m = Matrix4::Zero();
  for (int a = 0; a < 4; ++a) m += u[a] * detail::pauli_pair(a);
  return m;
}

/// u_a = Tr[(sigma_a (x) sigma_a) U] / 4.
inline PauliCoeffs pauli_coefficients(const ThetaVector &theta) {
  const Matrix4 u = canonical_unitary(theta);
  PauliCoeffs out;
  for (int a = 0; a < 4; ++a) {
    out[a] = (detail::pauli_pair(a) * u).trace() / 4.0;
  }
  return out;
}

/// Closed forms u0 = c1c2c3 + i s1s2s3, u1 = c1s2s3 + i s1c2c3 and cyclic.
inline PauliCoeffs pauli_coefficients_closed_form(const ThetaVector &theta) {
  const double c1 = std::cos(theta[0]), c2 = std::cos(theta[1]), c3 = std::cos(theta[2]);
  const double s1 = std::sin(theta[0]), s2 = std::sin(theta[1]), s3 = std::sin(theta[2]);
  PauliCoeffs out;
  out[0] = {c1 * c2 * c3, s1 * s2 * s3};
  out[1] = {c1 * s2 * s3, s1 * c2 * c3};
  out[2] = {s1 * c2 * s3, c1 * s2 * c3};
  out[3] = {s1 * s2 * c3, c1 * c2 * s3};
  return out;
}

/// Tetrahedron O A1 A2 A3: pi/4 >= t1 >= t2 >= t3 >= 0.
inline bool in_weyl_domain(const ThetaVector &theta, double tol = 1e-12) {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  return theta.is_finite() && theta[0] <= kQuarterPi + tol && theta[0] + tol >= theta[1] &&
         theta[1] + tol >= theta[2] && theta[2] >= -tol;
}

/// Mirrored half O A1' A2' A3': -pi/4 <= t1 <= 0 and -t1 >= t2 >= t3 >= 0.
inline bool in_mirrored_weyl_domain(const ThetaVector &theta, double tol = 1e-12) {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  return theta.is_finite() && theta[0] >= -kQuarterPi - tol && theta[0] <= tol &&
         -theta[0] + tol >= theta[1] && theta[1] + tol >= theta[2] && theta[2] >= -tol;
}

namespace landmarks {
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
inline const ThetaVector kOrigin{0.0, 0.0, 0.0};
inline const ThetaVector kA1{kQuarterPi, 0.0, 0.0};
inline const ThetaVector kA2{kQuarterPi, kQuarterPi, 0.0};
inline const ThetaVector kA3{kQuarterPi, kQuarterPi, kQuarterPi};
}  // namespace landmarks

}  // namespace quasicut
