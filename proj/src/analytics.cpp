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

#include "nvswap/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nvswap {

namespace {

// Σ_{l<L} x^l, exact at x = 1.
double geometric_sum(double x, int rounds) {
  if (rounds <= 0) return 0.0;
  if (std::abs(1.0 - x) < 1e-12) return static_cast<double>(rounds);
  return (1.0 - std::pow(x, rounds)) / (1.0 - x);
}

}  // namespace

double false_negative_per_qnd_miss(double p_abs, double p_qnd, int rounds) {
  return p_abs * geometric_sum((1.0 - p_abs) * p_qnd, rounds);
}

double false_positive_per_dark(double p_abs, double p_dark, int rounds) {
  return (1.0 - p_abs) * geometric_sum((1.0 - p_abs) * (1.0 - p_dark), rounds);
}

double false_negative_bound(double p_abs, double p_qnd, int rounds) {
  return (1.0 - p_qnd) * false_negative_per_qnd_miss(p_abs, p_qnd, rounds);
}

double false_positive_bound(double p_abs, double p_dark, int rounds) {
  return p_dark * false_positive_per_dark(p_abs, p_dark, rounds);
}

double lorentzian_suppression(double detuning, double linewidth) {
  if (!(linewidth > 0)) throw std::invalid_argument("linewidth must be positive");
  const double x = detuning / linewidth;
  return 1.0 / (1.0 + x * x);
}

double spectral_width(double lifetime) {
  if (!(lifetime > 0)) throw std::invalid_argument("lifetime must be positive");
  return 1.0 / (std::numbers::pi * lifetime);
}

double dephasing_factor(double tau, double t2) {
  if (!(t2 > 0)) throw std::invalid_argument("t2 must be positive");
  const double x = tau / t2;
  return std::exp(-x * x);
}

double db_to_probability(double loss_db) {
  if (!(loss_db >= 0)) throw std::invalid_argument("loss in dB must be non-negative");
  return 1.0 - std::pow(10.0, -loss_db / 10.0);
}

double probability_to_db(double p_loss) {
  if (!(p_loss >= 0 && p_loss < 1)) throw std::invalid_argument("loss probability must lie in [0, 1)");
  return -10.0 * std::log10(1.0 - p_loss);
}

RoundObjective default_objective(Approach approach) {
  return MaxSuccessAtMinFidelity{approach == Approach::B ? 0.99 : 0.96};
}

std::vector<int> round_candidates(Approach approach, int max_rounds) {
  const int step = approach == Approach::A ? 2 : 4;
  std::vector<int> out;
  for (int l = step; l <= max_rounds; l += step) out.push_back(l);
  return out;
}

ProtocolParams with_rounds(ProtocolParams params, int rounds) {
  params.rounds = rounds;
  params.schedule_override.reset();
  if (params.approach == Approach::B) {
    params.l_z = rounds / 4;
    params.l_x = rounds / 2;
  }
  return params;
}

RoundSearch optimize_rounds(const ProtocolParams& params, const RoundObjective& objective, int max_rounds) {
  RoundSearch search;
  for (int l : round_candidates(params.approach, max_rounds)) {
    const ProtocolResult r = run_protocol(with_rounds(params, l));
    RoundCandidate c;
    c.rounds = l;
    c.l_z = params.approach == Approach::B ? l / 4 : 0;
    c.l_x = params.approach == Approach::B ? l / 2 : 0;
    c.total_success = r.total_success;
    c.min_fidelity = r.min_fidelity();
    if (const auto* m = std::get_if<MaxSuccessAtMinFidelity>(&objective)) {
      c.feasible = c.min_fidelity && *c.min_fidelity >= m->threshold;
      c.score = c.total_success;
    } else {
      const double w = std::get<WeightedObjective>(objective).fidelity_weight;
      c.feasible = c.min_fidelity.has_value();
      c.score = (1.0 - w) * c.total_success + w * c.min_fidelity.value_or(0.0);
    }
    if (c.feasible && (!search.best || c.score > search.best->score)) search.best = c;
    search.candidates.push_back(c);
  }
  return search;
}

}  // namespace nvswap
