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
#include <optional>
#include <stdexcept>
#include <vector>

#include "nvswap/bell.hpp"
#include "nvswap/joint_state.hpp"
#include "nvswap/params.hpp"
#include "nvswap/schedule.hpp"

namespace nvswap {

/// Raised when a state leaves the density-operator tolerances during a run.
class NumericalInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class HeraldType { QndClick, FinalParityEven, FinalParityOdd };

struct HeraldRecord {
  int round = 0;
  FlipCount flips;
  HeraldType type = HeraldType::QndClick;
  double weight = 0;
  Matrix4c<double> conditional_13 = Matrix4c<double>::Zero();  // unit trace
  BellLabel target = BellLabel::PhiMinus;

  double fidelity() const { return conditional_13(index_of(target), index_of(target)).real(); }
};

using FidelityByTarget = std::array<std::optional<double>, 4>;

struct ProtocolResult {
  /// Probability of an absorption herald by the end of each round.
  std::vector<double> cumulative_success;
  /// Weight-averaged conditional fidelity of the records announcing each target.
  FidelityByTarget fidelity_per_target;
  double total_success = 0;
  std::vector<HeraldRecord> herald_log;

  double final_measurement_success = 0;  // approach A parity records
  double false_positive_weight = 0;      // dark-count clicks
  double false_negative_weight = 0;      // absorbed, never heralded (A2 left at the end)
  double unheralded_weight = 0;          // everything not covered by a record

  /// Weight-averaged fidelity over records announcing either label.
  std::optional<double> pooled_fidelity(BellLabel a, BellLabel b) const;
  /// Weight-averaged fidelity over all records.
  std::optional<double> mean_fidelity() const;
  /// Smallest per-target fidelity among targets that were announced.
  std::optional<double> min_fidelity() const;
};

struct RunOptions {
  /// Validate Hermiticity, PSD and trace of the surviving branch every round.
  bool check_invariants = false;
};

ProtocolResult run_protocol(const ProtocolParams& params, const RunOptions& options = {});

struct ParityOutcome {
  std::vector<HeraldRecord> records;
  double failure_weight = 0;  // photon lost, NV in A2/A1, or undetected
};

/// Approach A's closing measurement of photon and NV2 in the product basis of
/// `params.flip_observable`, applied to the surviving no-herald branch. Each of
/// the two detections succeeds with `params.detector_eff`.
ParityOutcome final_parity_measurement(const JointState<double>& state, const ProtocolParams& params);

/// Running weight-averaged per-target fidelity after each round (QND records
/// only; approach A parity records are not part of any round).
std::vector<FidelityByTarget> running_fidelity(const ProtocolResult& result);

/// Running weight-averaged fidelity over all QND records up to each round.
std::vector<std::optional<double>> running_pooled_fidelity(const ProtocolResult& result);

}  // namespace nvswap
