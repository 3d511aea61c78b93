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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "nvswap/bell.hpp"

namespace nvswap {

/// Basis slots of the NV2/photon factor. The first four span the photon-present
/// sector (Bell states of photon ⊗ NV2, photon as the first qubit); the last four
/// span the photon-gone sector (NV2 alone).
enum class Slot2p : int {
  PhiPlus = 0,
  PhiMinus = 1,
  PsiPlus = 2,
  PsiMinus = 3,
  A2 = 4,
  A1 = 5,
  SpinUp = 6,    // |+1>
  SpinDown = 7,  // |-1>
};

enum class Sector2p { PhotonPresent, PhotonGone };

inline constexpr int kPair13Dim = 4;
inline constexpr int kFactor2pDim = 8;
inline constexpr int kJointDim = kPair13Dim * kFactor2pDim;

constexpr int slot_index(Slot2p s) { return static_cast<int>(s); }

constexpr Slot2p photon_slot(BellLabel b) { return static_cast<Slot2p>(static_cast<int>(b)); }

constexpr Sector2p sector_of(Slot2p s) {
  return slot_index(s) < 4 ? Sector2p::PhotonPresent : Sector2p::PhotonGone;
}

/// Row/column of |pair13> ⊗ |slot> in the 32-dim joint basis.
constexpr int joint_index(BellLabel pair13, Slot2p slot) {
  return kFactor2pDim * static_cast<int>(pair13) + slot_index(slot);
}

constexpr int joint_index(int pair13, int slot) { return kFactor2pDim * pair13 + slot; }

template <typename Scalar>
using JointMatrix = Eigen::Matrix<std::complex<Scalar>, kJointDim, kJointDim>;

template <typename Scalar>
using Factor2pMatrix = Eigen::Matrix<std::complex<Scalar>, kFactor2pDim, kFactor2pDim>;

/// Density operator on {Bell}_13 ⊗ ({Bell}_2p ⊕ {A2, A1, +1, -1}) together with the
/// probability of the branch it describes. The matrix is kept at unit trace; a
/// zero-weight state is the explicit "empty branch".
template <typename Scalar = double>
class JointState {
 public:
  using Matrix = JointMatrix<Scalar>;

  JointState() : rho_(Matrix::Zero()), weight_(0) {}

  JointState(const Matrix& rho, Scalar weight) : rho_(rho), weight_(weight) {
    if (weight_ <= Scalar(0)) {
      rho_.setZero();
      weight_ = Scalar(0);
    }
  }

  /// Splits an unnormalized branch operator into unit-trace matrix and weight,
  /// scaled by the weight of the parent branch.
  static JointState from_unnormalized(const Matrix& m, Scalar parent_weight) {
    const Scalar t = m.trace().real();
    if (!(t > Scalar(0)) || !(parent_weight > Scalar(0))) return JointState();
    return JointState(m / t, parent_weight * t);
  }

  static JointState empty_branch() { return JointState(); }

  const Matrix& matrix() const { return rho_; }
  Scalar weight() const { return weight_; }
  bool empty() const { return weight_ == Scalar(0); }

  /// weight · ρ
  Matrix unnormalized() const { return rho_ * weight_; }

  /// ⟨slot|Tr_13 ρ|slot⟩
  Scalar population(Slot2p slot) const {
    Scalar p = 0;
    for (int b = 0; b < kPair13Dim; ++b) {
      const int i = joint_index(b, slot_index(slot));
      p += rho_(i, i).real();
    }
    return p;
  }

  Scalar sector_population(Sector2p sector) const {
    Scalar p = 0;
    for (int s = 0; s < kFactor2pDim; ++s)
      if (sector_of(static_cast<Slot2p>(s)) == sector) p += population(static_cast<Slot2p>(s));
    return p;
  }

  /// Partial trace over the NV2/photon factor.
  Matrix4c<Scalar> reduced_pair13() const {
    Matrix4c<Scalar> r = Matrix4c<Scalar>::Zero();
    for (int a = 0; a < kPair13Dim; ++a)
      for (int b = 0; b < kPair13Dim; ++b)
        for (int s = 0; s < kFactor2pDim; ++s) r(a, b) += rho_(joint_index(a, s), joint_index(b, s));
    return r;
  }

 private:
  Matrix rho_;
  Scalar weight_;
};

/// Diagnostics for the density-operator invariants.
template <typename Scalar>
struct StateDiagnostics {
  Scalar hermiticity_error;  // max |ρ_ij - conj(ρ_ji)|
  Scalar min_eigenvalue;
  Scalar trace_error;  // |Tr ρ - 1|
};

template <typename Scalar>
StateDiagnostics<Scalar> diagnose(const JointState<Scalar>& s) {
  const auto& m = s.matrix();
  const Scalar herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const JointMatrix<Scalar> h = (m + m.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<JointMatrix<Scalar>> solver(h, Eigen::EigenvaluesOnly);
  return {herm, solver.eigenvalues().minCoeff(), std::abs(m.trace().real() - Scalar(1))};
}

struct StateTolerance {
  double hermiticity = 1e-12;
  double min_eigenvalue = -1e-10;
  double trace = 1e-10;
};

/// True when a non-empty state is Hermitian, PSD and unit trace within `tol`.
/// Empty branches are valid by definition.
template <typename Scalar>
bool is_valid(const JointState<Scalar>& s, const StateTolerance& tol = {}) {
  if (s.empty()) return true;
  if (s.weight() < Scalar(0) || s.weight() > Scalar(1) + Scalar(tol.trace)) return false;
  const auto d = diagnose(s);
  return d.hermiticity_error <= tol.hermiticity && d.min_eigenvalue >= tol.min_eigenvalue &&
         d.trace_error <= tol.trace;
}

}  // namespace nvswap
