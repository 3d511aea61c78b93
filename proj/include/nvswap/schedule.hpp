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

#include <vector>

#include "nvswap/bell.hpp"
#include "nvswap/channels.hpp"
#include "nvswap/params.hpp"

namespace nvswap {

/// Number of photon flips applied so far.
struct FlipCount {
  int phase = 0;
  int polarisation = 0;

  friend bool operator==(const FlipCount&, const FlipCount&) = default;
};

FlipCount advance(FlipCount count, FlipKind kind);

/// Flip applied at the end of each round, one entry per round.
std::vector<FlipKind> build_schedule(const ProtocolParams& params);

/// Pair-13 Bell state announced by an absorption herald after `flips`.
/// (0,0) → φ−; an odd phase count toggles the sign, an odd polarisation count the parity.
BellLabel epoch_target(FlipCount flips);

/// Pair-13 Bell state announced by approach A's final parity outcome (after an even
/// number of flips). XX: even → ψ+, odd → ψ−. ZZ: even → ψ+, odd → φ+.
BellLabel final_parity_target(FlipObservable observable, bool even_parity);

}  // namespace nvswap
