// Copyright 2026 The nvswap Authors
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

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace nvswap {

/// The four two-qubit Bell states. The enumerator value is the basis index
/// used by every Bell block in the joint state: bit 1 is the X (parity) bit,
/// bit 0 the Z (sign) bit, so two labels differ by the Pauli error `a ^ b`.
enum class BellLabel : int { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

constexpr std::size_t index_of(BellLabel label) { return static_cast<std::size_t>(label); }

constexpr BellLabel bell_from_index(std::size_t i) { return static_cast<BellLabel>(static_cast<int>(i & 3u)); }

constexpr std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "phi_plus";
    case BellLabel::PhiMinus: return "phi_minus";
    case BellLabel::PsiPlus: return "psi_plus";
    case BellLabel::PsiMinus: return "psi_minus";
  }
  return "?";
}

/// Even-parity labels (phi) versus odd (psi).
constexpr bool is_even_parity(BellLabel label) { return (index_of(label) & 2u) == 0; }

template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

template <typename Scalar>
using Vector4c = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

/// Bell vector in the computational basis |00>,|01>,|10>,|11> of (first, second) qubit.
/// phi± = (|00> ± |11>)/√2, psi± = (|01> ± |10>)/√2.
template <typename Scalar = double>
Vector4c<Scalar> bell_vector(BellLabel label) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  Vector4c<Scalar> v = Vector4c<Scalar>::Zero();
  switch (label) {
    case BellLabel::PhiPlus: v(0) = h; v(3) = h; break;
    case BellLabel::PhiMinus: v(0) = h; v(3) = -h; break;
    case BellLabel::PsiPlus: v(1) = h; v(2) = h; break;
    case BellLabel::PsiMinus: v(1) = h; v(2) = -h; break;
  }
  return v;
}

/// Columns are the Bell vectors; maps Bell coordinates to computational ones.
template <typename Scalar = double>
Matrix4c<Scalar> bell_to_computational() {
  Matrix4c<Scalar> m;
  for (BellLabel b : kAllBellLabels) m.col(index_of(b)) = bell_vector<Scalar>(b);
  return m;
}

/// Expresses a two-qubit operator given in the computational basis in Bell coordinates.
template <typename Scalar = double>
Matrix4c<Scalar> to_bell_basis(const Matrix4c<Scalar>& op) {
  const Matrix4c<Scalar> u = bell_to_computational<Scalar>();
  return u.adjoint() * op * u;
}

template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> pauli_x() {
  Eigen::Matrix<std::complex<Scalar>, 2, 2> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> pauli_z() {
  Eigen::Matrix<std::complex<Scalar>, 2, 2> m;
  m << 1, 0, 0, -1;
  return m;
}

/// a ⊗ b for single-qubit operators, first factor is the more significant qubit.
template <typename Scalar = double>
Matrix4c<Scalar> kron2(const Eigen::Matrix<std::complex<Scalar>, 2, 2>& a,
                       const Eigen::Matrix<std::complex<Scalar>, 2, 2>& b) {
  Matrix4c<Scalar> m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

}  // namespace nvswap
