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

#include <optional>
#include <variant>
#include <vector>

#include "nvswap/params.hpp"
#include "nvswap/protocol.hpp"

namespace nvswap {

// Closed-form error bounds over L cycles. q_x denotes 1 - p_x.

/// p_abs·q_qnd·Σ_{l<L} (q_abs·p_qnd)^l
double false_negative_bound(double p_abs, double p_qnd, int rounds);

/// p_dark·q_abs·Σ_{l<L} (q_abs·q_dark)^l
double false_positive_bound(double p_abs, double p_dark, int rounds);

/// The bounds divided by their prefactors q_qnd and p_dark (defined at zero).
double false_negative_per_qnd_miss(double p_abs, double p_qnd, int rounds);
double false_positive_per_dark(double p_abs, double p_dark, int rounds);

// Physical parameter estimators.

/// 1/(1 + (detuning/linewidth)^2); frequencies in Hz.
double lorentzian_suppression(double detuning, double linewidth);

/// Spectral width 1/(π·lifetime) of a spontaneously emitted photon, in Hz.
double spectral_width(double lifetime);

/// exp(-(tau/t2)^2)
double dephasing_factor(double tau, double t2);

/// 1 - 10^(-dB/10)
double db_to_probability(double loss_db);

/// -10·log10(1 - p)
double probability_to_db(double p_loss);

// Round-count search.

/// Largest success among settings whose every announced target reaches `threshold`.
struct MaxSuccessAtMinFidelity {
  double threshold = 0.99;
};

/// Maximizes (1 - fidelity_weight)·success + fidelity_weight·min_fidelity.
struct WeightedObjective {
  double fidelity_weight = 0.5;
};

using RoundObjective = std::variant<MaxSuccessAtMinFidelity, WeightedObjective>;

/// Default: success at min fidelity 0.99 (B) or 0.96 (A).
RoundObjective default_objective(Approach approach);

struct RoundCandidate {
  int rounds = 0;
  int l_z = 0;
  int l_x = 0;
  double total_success = 0;
  std::optional<double> min_fidelity;
  bool feasible = false;
  double score = 0;
};

struct RoundSearch {
  std::vector<RoundCandidate> candidates;  // in increasing L
  std::optional<RoundCandidate> best;      // nullopt when nothing is feasible
};

/// Candidate L values: A → 2, 4, …, max_rounds; B → 4, 8, …, max_rounds
/// (with l_z = L/4, l_x = L/2).
std::vector<int> round_candidates(Approach approach, int max_rounds = 64);

/// Exhaustive evaluation of run_protocol over the candidate range. Ties go to the
/// smaller L. `params.rounds`, `l_z`, `l_x` are ignored.
RoundSearch optimize_rounds(const ProtocolParams& params, const RoundObjective& objective,
                            int max_rounds = 64);

/// Applies candidate L (and the implied flip periods for B) to a parameter set.
ProtocolParams with_rounds(ProtocolParams params, int rounds);

}  // namespace nvswap
