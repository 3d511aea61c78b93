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

// Acceptance checks, one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails. Details for each check go to stdout below its line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nvswap/analytics.hpp"
#include "nvswap/channels.hpp"
#include "nvswap/protocol.hpp"
#include "nvswap/sweep.hpp"
#include "nvswap/trajectories.hpp"
#include "test_support.hpp"

using namespace nvswap;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << "    " << (ok ? "ok   " : "MISS ") << what << '\n';
  }
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

std::string g(double x) { return fmt("%.6g", x); }

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// 1. Closed-form bounds against the reference error table.
Check bounds_table() {
  Check c;
  struct Row {
    double p_abs;
    int l;
    double fn, fp;
    double tol;  // relative tolerance on the false-negative column
    bool fp_enforced;
  };
  const Row rows[] = {{0.01, 40, 0.282, 27.5, 0.05, false},
                      {0.10, 20, 0.836, 7.43, 0.05, false},
                      {0.25, 20, 0.969, 2.98, 0.01, true},
                      {0.50, 16, 0.990, 0.999, 0.01, true},
                      {0.90, 4, 0.9988, 0.111, 0.01, true}};
  for (const auto& r : rows) {
    const double fn = false_negative_bound(r.p_abs, 0.99, r.l) / 0.01;
    const double fp = false_positive_bound(r.p_abs, 2e-4, r.l) / 2e-4;
    c.expect(rel(fn, r.fn) <= r.tol, "p_abs=" + g(r.p_abs) + " L=" + std::to_string(r.l) + " fn/q_qnd=" + g(fn) +
                                         " ref " + g(r.fn) + " (rel " + g(rel(fn, r.fn)) + ")");
    if (r.fp_enforced)
      c.expect(rel(fp, r.fp) <= 0.01, "  fp/p_dark=" + g(fp) + " ref " + g(r.fp) + " (rel " + g(rel(fp, r.fp)) + ")");
    else
      c.detail << "    info   fp/p_dark=" << g(fp) << " ref " << g(r.fp) << " (rel " << g(rel(fp, r.fp))
               << ", reported only)\n";
  }
  return c;
}

struct TableRow {
  Approach approach;
  double p_abs;
  int rounds;
  double success;
  std::array<double, 4> fidelity;  // φ+, φ−, ψ+, ψ−
};

const std::vector<TableRow>& reference_rows() {
  static const std::vector<TableRow> rows = {
      {Approach::A, 0.1, 40, 0.433, {0.97, 0.97, 0.89, 0.89}},
      {Approach::A, 0.3, 20, 0.616, {0.975, 0.975, 0.97, 0.97}},
      {Approach::A, 0.5, 10, 0.738, {0.98, 0.98, 0.97, 0.97}},
      {Approach::A, 0.7, 6, 0.817, {0.975, 0.975, 0.97, 0.97}},
      {Approach::A, 0.9, 4, 0.869, {0.985, 0.985, 0.99, 0.99}},
      {Approach::B, 0.1, 36, 0.330, {0.993, 0.991, 0.991, 0.990}},
      {Approach::B, 0.3, 24, 0.569, {0.995, 0.996, 0.995, 0.996}},
      {Approach::B, 0.5, 16, 0.683, {0.996, 0.996, 0.996, 0.997}},
      {Approach::B, 0.7, 12, 0.760, {0.996, 0.996, 0.997, 0.998}},
      {Approach::B, 0.9, 8, 0.828, {0.997, 0.994, 0.993, 0.995}},
  };
  return rows;
}

// 2. Single-relay regression against the reference performance table.
Check table_regression() {
  Check c;
  for (const auto& row : reference_rows()) {
    const auto r = run_protocol(test::table_row(row.approach, row.p_abs, row.rounds));
    const std::string tag = std::string(to_string(row.approach)) + " p_abs=" + g(row.p_abs) + " L=" +
                            std::to_string(row.rounds);
    c.expect(std::abs(r.total_success - row.success) <= 0.03,
             tag + " success " + fmt("%.4f", r.total_success) + " ref " + g(row.success) + " (diff " +
                 fmt("%+.4f", r.total_success - row.success) + ")");
    for (std::size_t t = 0; t < 4; ++t) {
      const double f = r.fidelity_per_target[t].value_or(0.0);
      c.expect(std::abs(f - row.fidelity[t]) <= 0.015,
               tag + " F_" + std::string(to_string(bell_from_index(t))) + " " + fmt("%.4f", f) + " ref " + g(row.fidelity[t]));
    }
  }
  return c;
}

// 3. Ideal limit.
Check ideal_limit() {
  Check c;
  const auto r = run_protocol(ideal_parameters(Approach::B, 4), RunOptions{true});
  c.expect(std::abs(r.total_success - 1.0) <= 1e-10, "success " + fmt("%.15f", r.total_success));
  for (std::size_t t = 0; t < 4; ++t) {
    const double f = r.fidelity_per_target[t].value_or(0.0);
    c.expect(std::abs(f - 1.0) <= 1e-10, "F_" + std::string(to_string(bell_from_index(t))) + " " + fmt("%.15f", f));
  }
  return c;
}

// 4. Without photon flips only the initially absorbing quarter can herald.
Check quarter_ceiling() {
  Check c;
  for (int l : {4, 16, 64}) {
    ProtocolParams p = ideal_parameters(Approach::B, l);
    p.schedule_override = std::vector<FlipKind>(static_cast<std::size_t>(l), FlipKind::None);
    const double s = run_protocol(p).total_success;
    c.expect(std::abs(s - 0.25) <= 1e-10, "L=" + std::to_string(l) + " success " + fmt("%.15f", s));
  }
  return c;
}

// 5. Trajectory sampling against the exact engine.
Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0, 1);
  for (int set = 0; set < 5; ++set) {
    ProtocolParams p;
    p.approach = set % 2 == 0 ? Approach::B : Approach::A;
    p.p_abs = 0.05 + 0.9 * u(rng);
    p.r_a1 = 0.01 * u(rng);
    p.p_qnd = 0.9 + 0.1 * u(rng);
    p.p_dark = 0.005 * u(rng);
    p.p_loss = 0.1 * u(rng);
    p.tau = 20e-6 * u(rng);
    p.detector_eff = 0.8 + 0.2 * u(rng);
    p.flip_observable = u(rng) < 0.5 ? FlipObservable::XX : FlipObservable::ZZ;
    const int k = 1 + static_cast<int>(4 * u(rng));
    p = with_rounds(p, 4 * k);

    const auto exact = run_protocol(p);
    const auto mc = run_trajectories(p, 100000, 1000 + static_cast<std::uint64_t>(set));
    std::ostringstream tag;
    tag << "set " << set << " (" << to_string(p.approach) << ", p_abs=" << g(p.p_abs) << ", L=" << p.rounds << ")";
    const double z = (mc.total_success.mean - exact.total_success) / mc.total_success.std_error;
    c.expect(std::abs(z) <= 3, tag.str() + " success exact " + g(exact.total_success) + " mc " +
                                   g(mc.total_success.mean) + " z=" + fmt("%+.2f", z));
    for (std::size_t t = 0; t < 4; ++t) {
      if (!exact.fidelity_per_target[t] || !mc.fidelity_per_target[t]) {
        c.expect(!exact.fidelity_per_target[t] && !mc.fidelity_per_target[t], tag.str() + " target presence");
        continue;
      }
      const auto& e = *mc.fidelity_per_target[t];
      const double d = e.mean - *exact.fidelity_per_target[t];
      const double zf = e.std_error > 0 ? d / e.std_error : (std::abs(d) < 1e-12 ? 0.0 : 1e9);
      c.expect(std::abs(zf) <= 3, tag.str() + " F_" + std::string(to_string(bell_from_index(t))) + " exact " +
                                      g(*exact.fidelity_per_target[t]) + " mc " + g(e.mean) + " z=" + fmt("%+.2f", zf));
    }
  }
  return c;
}

// 6. Channel invariants on random states.
Check channel_invariants() {
  Check c;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  StateTolerance tol;
  double worst_herm = 0, worst_eig = 0, worst_weight = 0, worst_invol = 0, worst_semi = 0;
  int invalid = 0;
  auto inspect = [&](const JointState<double>& s) {
    if (s.empty()) return;
    const auto d = diagnose(s);
    worst_herm = std::max(worst_herm, d.hermiticity_error);
    worst_eig = std::min(worst_eig, d.min_eigenvalue);
    if (!is_valid(s, tol)) ++invalid;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto s = test::random_state(rng);
    const double p = u(rng), q = u(rng);
    const double w = s.weight();
    const JointState<double> outs[] = {absorption_channel(s, p, q), photon_loss_channel(s, p),
                                       dephasing_channel(s, p, SpinSet::all()),
                                       flip_channel(s, static_cast<FlipKind>(i % 4))};
    for (const auto& o : outs) {
      inspect(o);
      worst_weight = std::max(worst_weight, std::abs(o.weight() * o.matrix().trace().real() - w));
    }
    const auto qnd = qnd_povm(s, p, 0.05 * q);
    inspect(qnd.click);
    inspect(qnd.no_click);
    worst_weight = std::max(worst_weight, std::abs(qnd.click.weight() + qnd.no_click.weight() - w));

    for (auto k : {FlipKind::Phase, FlipKind::Polarisation, FlipKind::Both}) {
      const auto twice = flip_channel(flip_channel(s, k), k);
      worst_invol = std::max(worst_invol, (twice.matrix() - s.matrix()).cwiseAbs().maxCoeff());
    }
    const auto two_steps = dephasing_channel(dephasing_channel(s, p, SpinSet::all()), q, SpinSet::all());
    const auto one_step = dephasing_channel(s, p * q, SpinSet::all());
    worst_semi = std::max(worst_semi, (two_steps.matrix() - one_step.matrix()).cwiseAbs().maxCoeff());
  }
  c.expect(invalid == 0, "states outside tolerance: " + std::to_string(invalid));
  c.expect(worst_herm <= 1e-12, "max hermiticity error " + g(worst_herm));
  c.expect(worst_eig >= -1e-10, "min eigenvalue " + g(worst_eig));
  c.expect(worst_weight <= 1e-10, "max weight drift " + g(worst_weight));
  c.expect(worst_invol <= 1e-12, "max flip involution error " + g(worst_invol));
  c.expect(worst_semi <= 1e-12, "max dephasing semigroup error " + g(worst_semi));
  return c;
}

// 7. Physical estimators.
Check estimators() {
  Check c;
  const double loss = db_to_probability(0.3);
  c.expect(std::abs(loss - 0.0668) <= 1e-4, "0.3 dB -> " + g(loss));
  const double one_minus_eta = 1.0 - dephasing_factor(200e-9, 100e-6);
  c.expect(std::abs(one_minus_eta - 4.0e-6) <= 1e-8, "1 - eta = " + g(one_minus_eta));
  const double sup = lorentzian_suppression(3e9, spectral_width(10e-9));
  c.expect(sup >= 0.8e-4 && sup <= 1.2e-4, "off-resonant suppression " + g(sup));
  return c;
}

// 8. Simulated error rates against the closed-form bounds.
Check bound_domination() {
  Check c;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  int fn_viol = 0, fp_viol = 0, n = 0;
  double worst_fn = 0, worst_fp = 0;
  std::string example_fp;
  std::vector<double> p_abs_values(10);
  for (auto& v : p_abs_values) v = 0.05 + 0.9 * u(rng);
  for (double p_abs : p_abs_values)
    for (int j = 0; j < 10; ++j) {
      ProtocolParams p;
      p.approach = u(rng) < 0.5 ? Approach::A : Approach::B;
      p.p_abs = p_abs;
      p.p_qnd = 0.95 + 0.05 * u(rng);
      p.p_dark = 1e-5 + 1e-3 * u(rng);
      p.p_loss = 0.1 * u(rng);
      p = with_rounds(p, 4 * (1 + static_cast<int>(8 * u(rng))));
      const auto r = run_protocol(p);
      const double fn_b = false_negative_bound(p.p_abs, p.p_qnd, p.rounds);
      const double fp_b = false_positive_bound(p.p_abs, p.p_dark, p.rounds);
      ++n;
      if (r.false_negative_weight > fn_b) ++fn_viol;
      if (r.false_positive_weight > fp_b) {
        if (example_fp.empty())
          example_fp = "e.g. p_abs=" + g(p.p_abs) + " L=" + std::to_string(p.rounds) + ": simulated " +
                       g(r.false_positive_weight) + " vs bound " + g(fp_b);
        ++fp_viol;
      }
      worst_fn = std::max(worst_fn, r.false_negative_weight / fn_b);
      worst_fp = std::max(worst_fp, r.false_positive_weight / fp_b);
    }
  c.expect(fn_viol == 0, "false negatives above bound: " + std::to_string(fn_viol) + "/" + std::to_string(n) +
                             " (max ratio " + g(worst_fn) + ")");
  c.expect(fp_viol == 0, "false positives above bound: " + std::to_string(fp_viol) + "/" + std::to_string(n) +
                             " (max ratio " + g(worst_fp) + ") " + example_fp);
  return c;
}

// 9. Qualitative shape of success and fidelity curves.
Check shapes() {
  Check c;
  bool monotone = true;
  for (const auto& row : reference_rows()) {
    const auto r = run_protocol(test::table_row(row.approach, row.p_abs, row.rounds));
    for (std::size_t i = 1; i < r.cumulative_success.size(); ++i)
      if (r.cumulative_success[i] < r.cumulative_success[i - 1]) monotone = false;
  }
  c.expect(monotone, "cumulative success nondecreasing in every reference row");

  double worst_rise = 0;
  std::string where;
  for (const auto& row : reference_rows()) {
    if (row.approach != Approach::B) continue;
    const auto r = run_protocol(test::table_row(row.approach, row.p_abs, row.rounds));
    const auto f = running_pooled_fidelity(r);
    for (std::size_t i = 1; i < f.size(); ++i)
      if (f[i] && f[i - 1] && *f[i] - *f[i - 1] > worst_rise) {
        worst_rise = *f[i] - *f[i - 1];
        where = "p_abs=" + g(row.p_abs) + " round " + std::to_string(i + 1);
      }
  }
  c.expect(worst_rise <= 0.0, "approach B running fidelity nonincreasing (largest rise " + g(worst_rise) +
                                  (where.empty() ? "" : " at " + where) + ")");
  for (double p_abs : {0.1, 0.5, 0.9}) {
    c.detail << "    info   B p_abs=" << g(p_abs) << " end-of-run mean fidelity by L:";
    for (int l = 4; l <= 32; l += 4)
      c.detail << ' ' << fmt("%.5f", *run_protocol(test::table_row(Approach::B, p_abs, l)).mean_fidelity());
    c.detail << '\n';
  }

  for (double p_abs : {0.5, 0.7, 0.9}) {
    auto best = [&](Approach a) {
      const auto p = test::table_row(a, p_abs, 16);
      const auto s = optimize_rounds(p, default_objective(a));
      return s.best ? *s.best : RoundCandidate{};
    };
    const auto a = best(Approach::A), b = best(Approach::B);
    c.expect(a.total_success >= b.total_success, "p_abs=" + g(p_abs) + " A " + g(a.total_success) + " (L=" +
                                                     std::to_string(a.rounds) + ") >= B " + g(b.total_success) +
                                                     " (L=" + std::to_string(b.rounds) + ")");
  }

  const auto grid = sweep(linspace(0.05, 0.95, 19), {0.066}, test::table_row(Approach::B, 0.5, 16));
  const auto kinks = round_change_points(grid, 0);
  std::string ls;
  for (std::size_t i = 0; i < grid.p_abs_axis.size(); ++i) ls += std::to_string(grid.at(i, 0).rounds_used) + " ";
  c.expect(!kinks.empty(), "L_used along p_abs (B, optimized): " + ls);
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const Criterion criteria[] = {
      {1, "closed-form error bounds", bounds_table},
      {2, "single-relay performance table", table_regression},
      {3, "ideal limit", ideal_limit},
      {4, "25% ceiling without flips", quarter_ceiling},
      {5, "trajectory oracle equivalence", oracle_equivalence},
      {6, "channel invariants", channel_invariants},
      {7, "parameter estimators", estimators},
      {8, "bound domination", bound_domination},
      {9, "curve shapes", shapes},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const Check c = cr.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.2fs)\n%s", c.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                c.detail.str().c_str());
    if (!c.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
