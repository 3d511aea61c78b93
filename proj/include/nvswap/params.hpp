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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nvswap/channels.hpp"

namespace nvswap {

/// A flips one photon degree of freedom every round and ends with a parity
/// measurement; B flips phase every l_z and polarisation every l_x rounds.
enum class Approach { A, B };

/// Final measurement basis for approach A; XX pairs with phase flips, ZZ with
/// polarisation flips.
enum class FlipObservable { XX, ZZ };

constexpr std::string_view to_string(Approach a) { return a == Approach::A ? "A" : "B"; }
constexpr std::string_view to_string(FlipObservable o) { return o == FlipObservable::XX ? "XX" : "ZZ"; }

/// Raised for a parameter set that violates a protocol constraint.
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-cycle probabilities, timing and flip schedule of one protocol run.
/// Defaults are the reference operating point (QND 99 %, dark counts 2e-4,
/// 6.6 % loss per cycle, 200 ns cycles against T2 = 100 µs).
struct ProtocolParams {
  Approach approach = Approach::B;
  double p_abs = 0.5;
  double r_a1 = 1e-4;
  double p_qnd = 0.99;
  double p_dark = 2e-4;
  double p_loss = 0.066;
  double tau = 200e-9;  // seconds per cycle
  double t2 = 100e-6;   // seconds
  int rounds = 16;
  int l_z = 4;
  int l_x = 8;
  double detector_eff = 1.0;
  FlipObservable flip_observable = FlipObservable::XX;
  /// Replaces the periodic schedule (length must equal `rounds`); the period
  /// constraints are then not enforced.
  std::optional<std::vector<FlipKind>> schedule_override;

  /// Per-cycle coherence factor exp(-(tau/t2)^2).
  double eta() const;
};

/// Throws InvalidParameters naming the violated constraint.
void validate(const ProtocolParams& params);

/// Ideal single-relay settings: perfect absorption, detection and transmission.
ProtocolParams ideal_parameters(Approach approach, int rounds);

}  // namespace nvswap
