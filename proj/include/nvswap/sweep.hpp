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
#include <cstddef>
#include <optional>
#include <vector>

#include "nvswap/analytics.hpp"
#include "nvswap/params.hpp"
#include "nvswap/protocol.hpp"

namespace nvswap {

struct SweepCell {
  double p_abs = 0;
  double p_loss = 0;
  int rounds_used = 0;
  int l_z = 0;
  int l_x = 0;
  double total_success = 0;
  FidelityByTarget fidelity_per_target;
  bool feasible = true;  // false when round optimization found no admissible L
};

/// Row-major grid: cell (i, j) has p_abs_axis[i], p_loss_axis[j].
struct SweepGrid {
  std::vector<double> p_abs_axis;
  std::vector<double> p_loss_axis;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t i, std::size_t j) const { return cells[i * p_loss_axis.size() + j]; }
};

struct SweepOptions {
  bool optimize_rounds = true;
  std::optional<RoundObjective> objective;  // default_objective(approach) when unset
  int max_rounds = 64;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Evaluates every (p_abs, p_loss) cell from `base` (approach and all other
/// parameters taken from it). Axes must be strictly increasing probabilities.
SweepGrid sweep(const std::vector<double>& p_abs_axis, const std::vector<double>& p_loss_axis,
                const ProtocolParams& base, const SweepOptions& options = {});

/// Indices i along p_abs (at loss column j) where rounds_used differs from cell i-1.
std::vector<std::size_t> round_change_points(const SweepGrid& grid, std::size_t loss_index);

/// `n` evenly spaced points over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct RelayChainSpec {
  std::vector<ProtocolParams> hops;

  static RelayChainSpec uniform(const ProtocolParams& hop, std::size_t count);
};

struct HopSummary {
  double success = 0;
  /// Bell-diagonal error distribution of the delivered link, indexed by the
  /// Pauli difference (actual XOR announced) in Bell-label bits.
  std::array<double, 4> error_distribution{};
};

struct ChainResult {
  double chain_success = 0;
  double chain_fidelity_estimate = 0;
  std::vector<HopSummary> hops;
};

/// Error distribution of one hop, averaged over its heralds.
HopSummary summarize_hop(const ProtocolResult& result);

/// Success multiplies across hops; fidelity composes the hops' Bell-diagonal
/// error distributions (an artifact model: each hop acts as a Pauli channel on
/// the announced link).
ChainResult relay_chain(const RelayChainSpec& spec);

/// Composition of two Bell-diagonal error distributions.
std::array<double, 4> compose_errors(const std::array<double, 4>& a, const std::array<double, 4>& b);

}  // namespace nvswap
