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

#include "nvswap/schedule.hpp"

namespace nvswap {

FlipCount advance(FlipCount count, FlipKind kind) {
  if (kind == FlipKind::Phase || kind == FlipKind::Both) ++count.phase;
  if (kind == FlipKind::Polarisation || kind == FlipKind::Both) ++count.polarisation;
  return count;
}

std::vector<FlipKind> build_schedule(const ProtocolParams& params) {
  validate(params);
  if (params.schedule_override) return *params.schedule_override;

  std::vector<FlipKind> schedule;
  schedule.reserve(static_cast<std::size_t>(params.rounds));
  if (params.approach == Approach::A) {
    const FlipKind kind =
        params.flip_observable == FlipObservable::XX ? FlipKind::Phase : FlipKind::Polarisation;
    schedule.assign(static_cast<std::size_t>(params.rounds), kind);
    return schedule;
  }
  for (int round = 1; round <= params.rounds; ++round) {
    const bool phase = round % params.l_z == 0;
    const bool pol = round % params.l_x == 0;
    schedule.push_back(phase && pol ? FlipKind::Both
                       : phase      ? FlipKind::Phase
                       : pol        ? FlipKind::Polarisation
                                    : FlipKind::None);
  }
  return schedule;
}

BellLabel epoch_target(FlipCount flips) {
  // The absorbing photon state ψ−_2p is paired with φ−_13 initially. A phase flip
  // exchanges ψ+_2p↔ψ−_2p (sign bit); a polarisation flip exchanges φ_2p↔ψ_2p.
  const int sign = 1 ^ (flips.phase & 1);
  const int parity = flips.polarisation & 1;
  return bell_from_index(static_cast<std::size_t>(2 * parity + sign));
}

BellLabel final_parity_target(FlipObservable observable, bool even_parity) {
  // The never-absorbed photon components are φ±_2p (phase flips, paired with ψ±_13)
  // or φ+_2p/ψ+_2p (polarisation flips, paired with ψ+_13/φ+_13).
  if (observable == FlipObservable::XX) return even_parity ? BellLabel::PsiPlus : BellLabel::PsiMinus;
  return even_parity ? BellLabel::PsiPlus : BellLabel::PhiPlus;
}

}  // namespace nvswap
