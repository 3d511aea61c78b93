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

#include "nvswap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace nvswap {

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw InvalidParameters(std::string(name) + " axis is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] >= 0.0 && axis[i] <= 1.0))
      throw InvalidParameters(std::string(name) + " axis values must lie in [0, 1]");
    if (i > 0 && !(axis[i] > axis[i - 1]))
      throw InvalidParameters(std::string(name) + " axis must be strictly increasing");
  }
}

SweepCell evaluate_cell(ProtocolParams params, const SweepOptions& options, const RoundObjective& objective) {
  SweepCell cell;
  cell.p_abs = params.p_abs;
  cell.p_loss = params.p_loss;
  if (options.optimize_rounds) {
    const RoundSearch search = optimize_rounds(params, objective, options.max_rounds);
    if (!search.best) {
      cell.feasible = false;
      return cell;
    }
    params = with_rounds(params, search.best->rounds);
  }
  const ProtocolResult r = run_protocol(params);
  cell.rounds_used = params.rounds;
  cell.l_z = params.approach == Approach::B ? params.l_z : 0;
  cell.l_x = params.approach == Approach::B ? params.l_x : 0;
  cell.total_success = r.total_success;
  cell.fidelity_per_target = r.fidelity_per_target;
  return cell;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  if (n == 1) return {lo};
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

SweepGrid sweep(const std::vector<double>& p_abs_axis, const std::vector<double>& p_loss_axis,
                const ProtocolParams& base, const SweepOptions& options) {
  check_axis(p_abs_axis, "p_abs");
  check_axis(p_loss_axis, "p_loss");
  if (!options.optimize_rounds) validate(base);
  const RoundObjective objective = options.objective.value_or(default_objective(base.approach));

  SweepGrid grid{p_abs_axis, p_loss_axis, std::vector<SweepCell>(p_abs_axis.size() * p_loss_axis.size())};
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t k = next++; k < grid.cells.size() && !failed; k = next++) {
      ProtocolParams p = base;
      p.p_abs = p_abs_axis[k / p_loss_axis.size()];
      p.p_loss = p_loss_axis[k % p_loss_axis.size()];
      try {
        grid.cells[k] = evaluate_cell(p, options, objective);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  unsigned n = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, grid.cells.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return grid;
}

std::vector<std::size_t> round_change_points(const SweepGrid& grid, std::size_t loss_index) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < grid.p_abs_axis.size(); ++i)
    if (grid.at(i, loss_index).rounds_used != grid.at(i - 1, loss_index).rounds_used) out.push_back(i);
  return out;
}

RelayChainSpec RelayChainSpec::uniform(const ProtocolParams& hop, std::size_t count) {
  return RelayChainSpec{std::vector<ProtocolParams>(count, hop)};
}

HopSummary summarize_hop(const ProtocolResult& result) {
  HopSummary s;
  s.success = result.total_success;
  double total = 0;
  for (const auto& rec : result.herald_log) {
    const std::size_t t = index_of(rec.target);
    for (std::size_t actual = 0; actual < 4; ++actual) {
      const double p = rec.weight * rec.conditional_13(static_cast<Eigen::Index>(actual),
                                                        static_cast<Eigen::Index>(actual)).real();
      s.error_distribution[actual ^ t] += p;
      total += p;
    }
  }
  if (total > 0)
    for (auto& e : s.error_distribution) e /= total;
  else
    s.error_distribution = {1.0, 0.0, 0.0, 0.0};
  return s;
}

std::array<double, 4> compose_errors(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  std::array<double, 4> c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) c[i ^ j] += a[i] * b[j];
  return c;
}

ChainResult relay_chain(const RelayChainSpec& spec) {
  if (spec.hops.empty()) throw InvalidParameters("a relay chain needs at least one hop");
  ChainResult out;
  out.chain_success = 1.0;
  std::array<double, 4> errors{1.0, 0.0, 0.0, 0.0};
  for (const auto& hop : spec.hops) {
    const HopSummary s = summarize_hop(run_protocol(hop));
    out.chain_success *= s.success;
    errors = compose_errors(errors, s.error_distribution);
    out.hops.push_back(s);
  }
  out.chain_fidelity_estimate = errors[0];
  return out;
}

}  // namespace nvswap
