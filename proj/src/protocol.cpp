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

#include "nvswap/protocol.hpp"

#include <algorithm>
#include <sstream>

#include "nvswap/channels.hpp"

namespace nvswap {

namespace {

struct WeightedMean {
  double weight = 0;
  double weighted_sum = 0;

  void add(double w, double value) {
    weight += w;
    weighted_sum += w * value;
  }
  std::optional<double> value() const {
    if (!(weight > 0)) return std::nullopt;
    return weighted_sum / weight;
  }
};

Matrix4c<double> normalized(const Matrix4c<double>& m) {
  const double t = m.trace().real();
  return t > 0 ? Matrix4c<double>(m / t) : Matrix4c<double>::Zero();
}

void check_state(const JointState<double>& state, int round) {
  if (is_valid(state)) return;
  const auto d = diagnose(state);
  std::ostringstream os;
  os << "state left the density-operator tolerances after round " << round
     << " (hermiticity " << d.hermiticity_error << ", min eigenvalue " << d.min_eigenvalue
     << ", trace error " << d.trace_error << ")";
  throw NumericalInvariantError(os.str());
}

FlipCount flips_after(const std::vector<FlipKind>& schedule) {
  FlipCount c;
  for (FlipKind k : schedule) c = advance(c, k);
  return c;
}

}  // namespace

std::optional<double> ProtocolResult::pooled_fidelity(BellLabel a, BellLabel b) const {
  WeightedMean m;
  for (const auto& r : herald_log)
    if (r.target == a || r.target == b) m.add(r.weight, r.fidelity());
  return m.value();
}

std::optional<double> ProtocolResult::mean_fidelity() const {
  WeightedMean m;
  for (const auto& r : herald_log) m.add(r.weight, r.fidelity());
  return m.value();
}

std::optional<double> ProtocolResult::min_fidelity() const {
  std::optional<double> lowest;
  for (const auto& f : fidelity_per_target)
    if (f && (!lowest || *f < *lowest)) lowest = *f;
  return lowest;
}

ParityOutcome final_parity_measurement(const JointState<double>& state, const ProtocolParams& params) {
  if (params.approach != Approach::A)
    throw InvalidParameters("the final parity measurement belongs to approach A only");
  validate(params);

  ParityOutcome out;
  out.failure_weight = state.weight();
  if (state.empty()) return out;

  const FlipCount flips = flips_after(build_schedule(params));
  const double h = 1.0 / std::sqrt(2.0);
  // Single-qubit measurement basis vectors, outcome 0 = "+", 1 = "−".
  Eigen::Matrix2cd basis;
  if (params.flip_observable == FlipObservable::XX)
    basis << h, h, h, -h;  // columns |x+>, |x->
  else
    basis = Eigen::Matrix2cd::Identity();

  const Matrix4c<double> to_bell = bell_to_computational<double>().adjoint();
  const double efficiency = params.detector_eff * params.detector_eff;
  const auto& rho = state.matrix();

  std::array<Matrix4c<double>, 2> by_parity{Matrix4c<double>::Zero(), Matrix4c<double>::Zero()};
  for (int sp = 0; sp < 2; ++sp)
    for (int s2 = 0; s2 < 2; ++s2) {
      Vector4c<double> comp;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) comp(2 * i + j) = basis(i, sp) * basis(j, s2);
      const Vector4c<double> o = to_bell * comp;  // Bell coordinates of the outcome
      Matrix4c<double> block = Matrix4c<double>::Zero();
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          block(a, b) = (o.adjoint() * rho.block<4, 4>(kFactor2pDim * a, kFactor2pDim * b) * o)(0, 0);
      by_parity[static_cast<std::size_t>(sp ^ s2)] += block;
    }

  for (int parity = 0; parity < 2; ++parity) {
    const Matrix4c<double>& block = by_parity[static_cast<std::size_t>(parity)];
    const double w = state.weight() * efficiency * block.trace().real();
    if (!(w > 0)) continue;
    HeraldRecord rec;
    rec.round = params.rounds;
    rec.flips = flips;
    rec.type = parity == 0 ? HeraldType::FinalParityEven : HeraldType::FinalParityOdd;
    rec.weight = w;
    rec.conditional_13 = normalized(block);
    rec.target = final_parity_target(params.flip_observable, parity == 0);
    out.failure_weight -= w;
    out.records.push_back(rec);
  }
  out.failure_weight = std::max(out.failure_weight, 0.0);
  return out;
}

ProtocolResult run_protocol(const ProtocolParams& params, const RunOptions& options) {
  validate(params);
  const std::vector<FlipKind> schedule = build_schedule(params);
  const double eta = params.eta();

  ProtocolResult result;
  result.cumulative_success.reserve(schedule.size());
  JointState<double> state = make_initial_state<double>();
  FlipCount flips;
  double heralded = 0;

  for (int round = 1; round <= params.rounds; ++round) {
    state = absorption_channel(state, params.p_abs, params.r_a1);
    auto qnd = qnd_povm(state, params.p_qnd, params.p_dark);
    if (!qnd.click.empty()) {
      HeraldRecord rec;
      rec.round = round;
      rec.flips = flips;
      rec.type = HeraldType::QndClick;
      rec.weight = qnd.click.weight();
      rec.conditional_13 = normalized(qnd.click.reduced_pair13());
      rec.target = epoch_target(flips);
      heralded += rec.weight;
      result.herald_log.push_back(rec);
    }
    result.false_positive_weight += qnd.false_click_weight;
    result.cumulative_success.push_back(heralded);

    const FlipKind flip = schedule[static_cast<std::size_t>(round - 1)];
    state = photon_loss_channel(qnd.no_click, params.p_loss);
    state = dephasing_channel(state, eta, SpinSet::all());
    state = flip_channel(state, flip);
    flips = advance(flips, flip);
    if (options.check_invariants) check_state(state, round);
  }

  result.false_negative_weight = state.weight() * state.population(Slot2p::A2);
  result.unheralded_weight = state.weight();
  if (params.approach == Approach::A) {
    ParityOutcome parity = final_parity_measurement(state, params);
    for (const auto& rec : parity.records) result.final_measurement_success += rec.weight;
    result.herald_log.insert(result.herald_log.end(), parity.records.begin(), parity.records.end());
    result.unheralded_weight = parity.failure_weight;
  }
  result.total_success = heralded + result.final_measurement_success;

  std::array<WeightedMean, 4> per_target;
  for (const auto& rec : result.herald_log) per_target[index_of(rec.target)].add(rec.weight, rec.fidelity());
  for (std::size_t t = 0; t < 4; ++t) result.fidelity_per_target[t] = per_target[t].value();
  return result;
}

std::vector<FidelityByTarget> running_fidelity(const ProtocolResult& result) {
  std::vector<FidelityByTarget> rows;
  std::array<WeightedMean, 4> acc;
  auto rec = result.herald_log.begin();
  for (std::size_t round = 1; round <= result.cumulative_success.size(); ++round) {
    for (; rec != result.herald_log.end() && rec->type == HeraldType::QndClick &&
           rec->round == static_cast<int>(round);
         ++rec)
      acc[index_of(rec->target)].add(rec->weight, rec->fidelity());
    FidelityByTarget row;
    for (std::size_t t = 0; t < 4; ++t) row[t] = acc[t].value();
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::optional<double>> running_pooled_fidelity(const ProtocolResult& result) {
  std::vector<std::optional<double>> rows;
  WeightedMean acc;
  auto rec = result.herald_log.begin();
  for (std::size_t round = 1; round <= result.cumulative_success.size(); ++round) {
    for (; rec != result.herald_log.end() && rec->type == HeraldType::QndClick &&
           rec->round == static_cast<int>(round);
         ++rec)
      acc.add(rec->weight, rec->fidelity());
    rows.push_back(acc.value());
  }
  return rows;
}

}  // namespace nvswap
