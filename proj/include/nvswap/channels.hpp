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

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "nvswap/bell.hpp"
#include "nvswap/joint_state.hpp"

namespace nvswap {

enum class FlipKind { None, Phase, Polarisation, Both };

/// Spins that a dephasing step acts on.
struct SpinSet {
  bool nv1 = false;
  bool nv2 = false;
  bool nv3 = false;

  static constexpr SpinSet all() { return {true, true, true}; }
};

namespace detail {

inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

/// (I_13 ⊗ op) ρ (I_13 ⊗ op)†, one 8×8 block at a time.
template <typename Scalar>
JointMatrix<Scalar> conjugate_2p(const Factor2pMatrix<Scalar>& op, const JointMatrix<Scalar>& rho) {
  JointMatrix<Scalar> out;
  const Factor2pMatrix<Scalar> adj = op.adjoint();
  for (int a = 0; a < kPair13Dim; ++a)
    for (int b = 0; b < kPair13Dim; ++b)
      out.template block<kFactor2pDim, kFactor2pDim>(a * kFactor2pDim, b * kFactor2pDim).noalias() =
          op * rho.template block<kFactor2pDim, kFactor2pDim>(a * kFactor2pDim, b * kFactor2pDim) * adj;
  return out;
}

/// (op ⊗ I_2p) ρ (op ⊗ I_2p)†; zero entries of op are skipped.
template <typename Scalar>
JointMatrix<Scalar> conjugate_13(const Matrix4c<Scalar>& op, const JointMatrix<Scalar>& rho) {
  using C = std::complex<Scalar>;
  JointMatrix<Scalar> out = JointMatrix<Scalar>::Zero();
  for (int a = 0; a < kPair13Dim; ++a)
    for (int c = 0; c < kPair13Dim; ++c) {
      if (op(a, c) == C(0)) continue;
      for (int b = 0; b < kPair13Dim; ++b)
        for (int d = 0; d < kPair13Dim; ++d) {
          const C w = op(a, c) * std::conj(op(b, d));
          if (w == C(0)) continue;
          out.template block<kFactor2pDim, kFactor2pDim>(a * kFactor2pDim, b * kFactor2pDim) +=
              w * rho.template block<kFactor2pDim, kFactor2pDim>(c * kFactor2pDim, d * kFactor2pDim);
        }
    }
  return out;
}

/// Acts with `bell_block` on the photon-present sector and with `spin_block` on
/// {|+1>, |-1>}; identity on A2 and A1.
template <typename Scalar>
Factor2pMatrix<Scalar> sector_operator(const Matrix4c<Scalar>& bell_block,
                                       const Eigen::Matrix<std::complex<Scalar>, 2, 2>& spin_block) {
  Factor2pMatrix<Scalar> op = Factor2pMatrix<Scalar>::Zero();
  op.template block<4, 4>(0, 0) = bell_block;
  op(slot_index(Slot2p::A2), slot_index(Slot2p::A2)) = 1;
  op(slot_index(Slot2p::A1), slot_index(Slot2p::A1)) = 1;
  op.template block<2, 2>(6, 6) = spin_block;
  return op;
}

template <typename Scalar>
Matrix4c<Scalar> photon_flip_unitary(FlipKind kind) {
  using M2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
  const M2 id = M2::Identity();
  // Photon is the first qubit of the 2p pair.
  const Matrix4c<Scalar> phase = to_bell_basis<Scalar>(kron2<Scalar>(pauli_z<Scalar>(), id));
  const Matrix4c<Scalar> pol = to_bell_basis<Scalar>(kron2<Scalar>(pauli_x<Scalar>(), id));
  switch (kind) {
    case FlipKind::None: return Matrix4c<Scalar>::Identity();
    case FlipKind::Phase: return phase;
    case FlipKind::Polarisation: return pol;
    case FlipKind::Both: return phase * pol;
  }
  return Matrix4c<Scalar>::Identity();
}

/// Photon-present block traced over the photon, written into the {|+1>, |-1>} slots.
template <typename Scalar>
JointMatrix<Scalar> trace_out_photon(const JointMatrix<Scalar>& rho) {
  const Matrix4c<Scalar> to_comp = bell_to_computational<Scalar>();
  // 13 Bell index, computational (photon, NV2) index
  Eigen::Matrix<std::complex<Scalar>, 16, 16> present;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      present.template block<4, 4>(4 * a, 4 * b) =
          to_comp * rho.template block<4, 4>(kFactor2pDim * a, kFactor2pDim * b) * to_comp.adjoint();

  JointMatrix<Scalar> out = JointMatrix<Scalar>::Zero();
  constexpr int spin0 = slot_index(Slot2p::SpinUp);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) {
          std::complex<Scalar> acc = 0;
          for (int photon = 0; photon < 2; ++photon)
            acc += present(4 * a + 2 * photon + n, 4 * b + 2 * photon + m);
          out(joint_index(a, spin0 + n), joint_index(b, spin0 + m)) = acc;
        }
  return out;
}

}  // namespace detail

/// ½(|φ+⟩|ψ+⟩ + |φ−⟩|ψ−⟩ + |ψ+⟩|φ+⟩ + |ψ−⟩|φ−⟩), pair 13 first, photon pair second.
template <typename Scalar = double>
JointState<Scalar> make_initial_state() {
  using Vector = Eigen::Matrix<std::complex<Scalar>, kJointDim, 1>;
  Vector v = Vector::Zero();
  const Scalar h = Scalar(0.5);
  v(joint_index(BellLabel::PhiPlus, Slot2p::PsiPlus)) = h;
  v(joint_index(BellLabel::PhiMinus, Slot2p::PsiMinus)) = h;
  v(joint_index(BellLabel::PsiPlus, Slot2p::PhiPlus)) = h;
  v(joint_index(BellLabel::PsiMinus, Slot2p::PhiMinus)) = h;
  return JointState<Scalar>(v * v.adjoint(), Scalar(1));
}

/// Incoherent transfer ψ−_2p → A2 (probability p_abs) and ψ+_2p → A1 (p_abs·r_a1).
/// The pair-13 block travels with the transferred component.
template <typename Scalar>
JointState<Scalar> absorption_channel(const JointState<Scalar>& state, double p_abs, double r_a1) {
  detail::require_probability(p_abs, "p_abs");
  detail::require_probability(r_a1, "r_A1");
  if (state.empty()) return state;
  using F = Factor2pMatrix<Scalar>;
  const Scalar p2 = Scalar(p_abs);
  const Scalar p1 = Scalar(p_abs * r_a1);
  constexpr int psim = slot_index(Slot2p::PsiMinus);
  constexpr int psip = slot_index(Slot2p::PsiPlus);

  F stay = F::Identity();
  stay(psim, psim) = std::sqrt(Scalar(1) - p2);
  stay(psip, psip) = std::sqrt(Scalar(1) - p1);
  F to_a2 = F::Zero();
  to_a2(slot_index(Slot2p::A2), psim) = std::sqrt(p2);
  F to_a1 = F::Zero();
  to_a1(slot_index(Slot2p::A1), psip) = std::sqrt(p1);

  const auto& rho = state.matrix();
  JointMatrix<Scalar> out = detail::conjugate_2p(stay, rho);
  if (p2 > 0) out += detail::conjugate_2p(to_a2, rho);
  if (p1 > 0) out += detail::conjugate_2p(to_a1, rho);
  return JointState<Scalar>(out, state.weight());
}

/// Result of the heralding measurement. `p_click` is conditional on the input
/// branch; branch weights are absolute.
template <typename Scalar>
struct QndOutcome {
  Scalar p_click;
  JointState<Scalar> click;
  JointState<Scalar> no_click;
  Scalar true_click_weight;   // click caused by a detected A2 population
  Scalar false_click_weight;  // dark count on the complement
};

/// Two-outcome POVM with Kraus operators √p_qnd·P_A2 + √p_dark·(1−P_A2) (click) and
/// √(1−p_qnd)·P_A2 + √(1−p_dark)·(1−P_A2) (no click).
template <typename Scalar>
QndOutcome<Scalar> qnd_povm(const JointState<Scalar>& state, double p_qnd, double p_dark) {
  detail::require_probability(p_qnd, "p_qnd");
  detail::require_probability(p_dark, "p_dark");
  if (state.empty()) return {Scalar(0), JointState<Scalar>(), state, Scalar(0), Scalar(0)};

  using F = Factor2pMatrix<Scalar>;
  F click = F::Identity() * std::sqrt(Scalar(p_dark));
  F miss = F::Identity() * std::sqrt(Scalar(1) - Scalar(p_dark));
  constexpr int a2 = slot_index(Slot2p::A2);
  click(a2, a2) = std::sqrt(Scalar(p_qnd));
  miss(a2, a2) = std::sqrt(Scalar(1) - Scalar(p_qnd));

  const Scalar pa2 = state.population(Slot2p::A2);
  const Scalar p_true = Scalar(p_qnd) * pa2;
  const Scalar p_false = Scalar(p_dark) * (Scalar(1) - pa2);
  const Scalar p_click = p_true + p_false;

  const auto& rho = state.matrix();
  const JointMatrix<Scalar> c = detail::conjugate_2p(click, rho);
  const JointMatrix<Scalar> n = detail::conjugate_2p(miss, rho);

  QndOutcome<Scalar> out{p_click,
                         p_click > 0 ? JointState<Scalar>::from_unnormalized(c, state.weight())
                                     : JointState<Scalar>(),
                         JointState<Scalar>::from_unnormalized(n, state.weight()),
                         p_true * state.weight(), p_false * state.weight()};
  return out;
}

/// With probability p_loss the photon leaves: the photon-present block is replaced
/// by its partial trace over the photon, landing NV2 in {|+1>, |-1>}.
template <typename Scalar>
JointState<Scalar> photon_loss_channel(const JointState<Scalar>& state, double p_loss) {
  detail::require_probability(p_loss, "p_loss");
  if (state.empty() || p_loss == 0.0) return state;
  using F = Factor2pMatrix<Scalar>;
  F keep = F::Identity();
  const Scalar k = std::sqrt(Scalar(1) - Scalar(p_loss));
  for (int s = 0; s < 4; ++s) keep(s, s) = k;
  const auto& rho = state.matrix();
  JointMatrix<Scalar> out = detail::conjugate_2p(keep, rho);
  out += Scalar(p_loss) * detail::trace_out_photon(rho);
  return JointState<Scalar>(out, state.weight());
}

/// Mixture {(1+η)/2: I, (1−η)/2: X} per targeted spin, X exchanging |+1>↔|−1>.
/// NV2 is only touched where it exists as a spin (photon-present and spin-only slots).
template <typename Scalar>
JointState<Scalar> dephasing_channel(const JointState<Scalar>& state, double eta, SpinSet targets) {
  detail::require_probability(eta, "eta");
  if (state.empty() || eta == 1.0) return state;
  using M2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
  const M2 id = M2::Identity();
  const M2 x = pauli_x<Scalar>();
  const Scalar keep = (Scalar(1) + Scalar(eta)) / Scalar(2);
  const Scalar flip = (Scalar(1) - Scalar(eta)) / Scalar(2);

  JointMatrix<Scalar> rho = state.matrix();
  auto mix = [&](const JointMatrix<Scalar>& flipped) { rho = keep * rho + flip * flipped; };
  if (targets.nv1) mix(detail::conjugate_13<Scalar>(to_bell_basis<Scalar>(kron2<Scalar>(x, id)), rho));
  if (targets.nv3) mix(detail::conjugate_13<Scalar>(to_bell_basis<Scalar>(kron2<Scalar>(id, x)), rho));
  if (targets.nv2)
    mix(detail::conjugate_2p<Scalar>(
        detail::sector_operator<Scalar>(to_bell_basis<Scalar>(kron2<Scalar>(id, x)), x), rho));
  return JointState<Scalar>(rho, state.weight());
}

/// Unitary flip of the photon; only the photon-present sector changes.
template <typename Scalar>
JointState<Scalar> flip_channel(const JointState<Scalar>& state, FlipKind kind) {
  if (state.empty() || kind == FlipKind::None) return state;
  using M2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
  Factor2pMatrix<Scalar> op =
      detail::sector_operator<Scalar>(detail::photon_flip_unitary<Scalar>(kind), M2::Identity());
  if (kind == FlipKind::Both) {
    // Z·X = iY on the photon. The photonless slots take the same global phase i so
    // the operator is i(Y ⊕ I) and the channel stays an involution on states with
    // coherence between the sectors.
    const std::complex<Scalar> i(0, 1);
    for (int s = slot_index(Slot2p::A2); s < kFactor2pDim; ++s) op.row(s) *= i;
  }
  return JointState<Scalar>(detail::conjugate_2p<Scalar>(op, state.matrix()), state.weight());
}

/// ⟨target|ρ_13|target⟩ of the normalized pair-13 state; nullopt for an empty branch.
template <typename Scalar>
std::optional<Scalar> pair13_fidelity(const JointState<Scalar>& state, BellLabel target) {
  if (state.empty()) return std::nullopt;
  const auto r = state.reduced_pair13();
  const Scalar tr = r.trace().real();
  if (!(tr > Scalar(0))) return std::nullopt;
  const auto i = static_cast<Eigen::Index>(index_of(target));
  return r(i, i).real() / tr;
}

}  // namespace nvswap
