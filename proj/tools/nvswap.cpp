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

// nvswap command-line driver: run, bounds, sweep, chain, optimize.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "nvswap/analytics.hpp"
#include "nvswap/config.hpp"
#include "nvswap/protocol.hpp"
#include "nvswap/sweep.hpp"
#include "nvswap/trajectories.hpp"

namespace {

using namespace nvswap;

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : "nan"; }

void fidelity_cells(std::ostream& os, const FidelityByTarget& f) {
  for (const auto& v : f) os << ',' << num(v);
}

constexpr const char* kFidelityHeader = "F_phi_plus,F_phi_minus,F_psi_plus,F_psi_minus";

// Writes next to the target and renames, so a failed command leaves no file behind.
void emit(const std::string& text, const std::optional<std::string>& out) {
  if (!out) {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(*out);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, target);
}

std::string cmd_run(const RunConfig& cfg) {
  const ProtocolParams& p = cfg.params;
  const ProtocolResult r = run_protocol(p, RunOptions{true});
  std::optional<TrajectoryResult> mc;
  if (cfg.trajectories > 0) mc = run_trajectories(p, cfg.trajectories, cfg.seed);

  std::ostringstream os;
  os << "round,cumulative_success," << kFidelityHeader;
  if (mc) os << ",mc_cumulative_success,mc_std_error";
  os << '\n';
  const auto running = running_fidelity(r);
  for (std::size_t l = 0; l < r.cumulative_success.size(); ++l) {
    os << l + 1 << ',' << num(r.cumulative_success[l]);
    fidelity_cells(os, running[l]);
    if (mc) os << ',' << num(mc->cumulative_success[l].mean) << ',' << num(mc->cumulative_success[l].std_error);
    os << '\n';
  }
  os << "total," << num(r.total_success);
  fidelity_cells(os, r.fidelity_per_target);
  if (mc) os << ',' << num(mc->total_success.mean) << ',' << num(mc->total_success.std_error);
  os << '\n';
  return os.str();
}

std::string cmd_bounds(const RunConfig& cfg) {
  std::ostringstream os;
  os << "p_abs,L,fn_over_qqnd,fp_over_pdark\n";
  for (const auto& [p_abs, l] : cfg.bounds_rows) {
    const double fn = false_negative_per_qnd_miss(p_abs, cfg.params.p_qnd, l);
    const double fp = false_positive_per_dark(p_abs, cfg.params.p_dark, l);
    os << num(p_abs) << ',' << l << ',' << num(fn) << ',' << num(fp) << '\n';
  }
  return os.str();
}

std::string cmd_sweep(const RunConfig& cfg) {
  SweepOptions opt;
  opt.optimize_rounds = cfg.optimize_l;
  opt.objective = cfg.objective;
  opt.max_rounds = cfg.max_rounds;
  const SweepGrid grid = sweep(cfg.p_abs_axis, cfg.p_loss_axis, cfg.params, opt);
  std::ostringstream os;
  os << "p_abs,p_loss,approach,L_used,total_success," << kFidelityHeader << '\n';
  for (const auto& c : grid.cells) {
    os << num(c.p_abs) << ',' << num(c.p_loss) << ',' << to_string(cfg.params.approach) << ','
       << c.rounds_used << ',' << (c.feasible ? num(c.total_success) : "nan");
    fidelity_cells(os, c.fidelity_per_target);
    os << '\n';
  }
  return os.str();
}

std::string cmd_chain(const RunConfig& cfg) {
  validate(cfg.params);
  const HopSummary hop = summarize_hop(run_protocol(cfg.params));
  std::ostringstream os;
  os << "hops,chain_success,chain_fidelity\n";
  double success = 1.0;
  std::array<double, 4> errors{1.0, 0.0, 0.0, 0.0};
  for (std::size_t n = 1; n <= cfg.hops; ++n) {
    success *= hop.success;
    errors = compose_errors(errors, hop.error_distribution);
    os << n << ',' << num(success) << ',' << num(errors[0]) << '\n';
  }
  return os.str();
}

std::string cmd_optimize(const RunConfig& cfg) {
  const RoundObjective objective = cfg.objective.value_or(default_objective(cfg.params.approach));
  const RoundSearch s = optimize_rounds(cfg.params, objective, cfg.max_rounds);
  std::ostringstream os;
  os << "L,l_z,l_x,total_success,min_fidelity,feasible,score,selected\n";
  for (const auto& c : s.candidates) {
    const bool selected = s.best && s.best->rounds == c.rounds;
    os << c.rounds << ',' << c.l_z << ',' << c.l_x << ',' << num(c.total_success) << ','
       << num(c.min_fidelity) << ',' << (c.feasible ? 1 : 0) << ',' << num(c.score) << ','
       << (selected ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-relay entanglement swapping with photon recycling"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trajectories;
  std::optional<std::string> approach;
  app.add_option("--config", config_path, "key = value parameter file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out, "output file (stdout when absent)");
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--trajectories", trajectories, "add a Monte-Carlo cross-check with this many trajectories");
  app.add_option("--approach", approach, "override the config's approach")->check(CLI::IsMember({"A", "B"}));

  auto* run = app.add_subcommand("run", "per-round success and fidelities");
  auto* bounds = app.add_subcommand("bounds", "closed-form false-negative/positive bounds");
  auto* sweep_cmd = app.add_subcommand("sweep", "grid over absorption and loss probabilities");
  auto* chain = app.add_subcommand("chain", "relay chain of identical hops");
  auto* optimize = app.add_subcommand("optimize", "round-count search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (approach) {
      cfg.params.approach = *approach == "A" ? Approach::A : Approach::B;
      cfg.keys.insert("approach");
      if (cfg.params.approach == Approach::B && cfg.has("rounds")) {
        if (!cfg.has("l_z")) cfg.params.l_z = cfg.params.rounds / 4;
        if (!cfg.has("l_x")) cfg.params.l_x = cfg.params.rounds / 2;
      }
    }
    if (seed) cfg.seed = *seed;
    if (trajectories) cfg.trajectories = *trajectories;

    std::string text;
    if (run->parsed()) {
      require_keys(cfg, "run");
      validate(cfg.params);
      text = cmd_run(cfg);
    } else if (bounds->parsed()) {
      require_keys(cfg, "bounds");
      text = cmd_bounds(cfg);
    } else if (sweep_cmd->parsed()) {
      require_keys(cfg, "sweep");
      text = cmd_sweep(cfg);
    } else if (chain->parsed()) {
      require_keys(cfg, "chain");
      validate(cfg.params);
      text = cmd_chain(cfg);
    } else if (optimize->parsed()) {
      require_keys(cfg, "optimize");
      text = cmd_optimize(cfg);
    }
    emit(text, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidParameters& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalInvariantError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
