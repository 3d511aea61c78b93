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

#include "nvswap/params.hpp"

#include <cmath>
#include <sstream>

#include "nvswap/analytics.hpp"

namespace nvswap {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0, 1], got " << p;
    throw InvalidParameters(os.str());
  }
}

[[noreturn]] void fail(const std::string& message) { throw InvalidParameters(message); }

}  // namespace

double ProtocolParams::eta() const { return dephasing_factor(tau, t2); }

void validate(const ProtocolParams& p) {
  check_probability(p.p_abs, "p_abs");
  check_probability(p.r_a1, "r_a1");
  check_probability(p.p_qnd, "p_qnd");
  check_probability(p.p_dark, "p_dark");
  check_probability(p.p_loss, "p_loss");
  check_probability(p.detector_eff, "detector_eff");
  if (!(p.tau >= 0.0) || !std::isfinite(p.tau)) fail("tau must be a finite non-negative time");
  if (!(p.t2 > 0.0)) fail("t2 must be positive");
  if (p.rounds < 1) fail("rounds must be at least 1");

  if (p.schedule_override) {
    if (static_cast<int>(p.schedule_override->size()) != p.rounds)
      fail("schedule override has " + std::to_string(p.schedule_override->size()) +
           " entries but rounds = " + std::to_string(p.rounds));
    return;
  }

  if (p.approach == Approach::A) {
    if (p.rounds % 2 != 0) fail("approach A needs an even number of rounds, got " + std::to_string(p.rounds));
    return;
  }
  if (p.l_z < 1 || p.l_x < 1) fail("l_z and l_x must be positive");
  if (p.rounds != 2 * p.l_x || p.rounds != 4 * p.l_z)
    fail("approach B needs rounds = 2*l_x = 4*l_z, got rounds=" + std::to_string(p.rounds) +
         " l_z=" + std::to_string(p.l_z) + " l_x=" + std::to_string(p.l_x));
}

ProtocolParams ideal_parameters(Approach approach, int rounds) {
  ProtocolParams p;
  p.approach = approach;
  p.p_abs = 1.0;
  p.r_a1 = 0.0;
  p.p_qnd = 1.0;
  p.p_dark = 0.0;
  p.p_loss = 0.0;
  p.tau = 0.0;
  p.rounds = rounds;
  p.l_z = rounds / 4;
  p.l_x = rounds / 2;
  return p;
}

}  // namespace nvswap
