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

#include "nvswap/trajectories.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <random>
#include <thread>

#include "nvswap/channels.hpp"
#include "nvswap/schedule.hpp"

// Independent unraveling of the protocol: each trajectory is a pure state of the
// physical qubits (NV1, NV3, photon, NV2) written in the computational basis, and
// every channel is replaced by sampling one of its Kraus branches.

namespace nvswap {

namespace {

using cd = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

enum class Where { Present, A2, A1, SpinOnly };

struct Trajectory {
  Where where = Where::Present;
  // Present: index 8·q1 + 4·q3 + 2·photon + nv2.  SpinOnly: 4·q1 + 2·q3 + nv2.
  // A2/A1: 2·q1 + q3.
  std::array<cd, 16> amp{};
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Uniform {
 public:
  Uniform(std::uint64_t seed, std::uint64_t index) : rng_(splitmix64(splitmix64(seed) ^ index)) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

int size_of(Where w) {
  switch (w) {
    case Where::Present: return 16;
    case Where::SpinOnly: return 8;
    default: return 4;
  }
}

void normalize(Trajectory& t) {
  double n = 0;
  for (int i = 0; i < size_of(t.where); ++i) n += std::norm(t.amp[i]);
  const double s = 1.0 / std::sqrt(n);
  for (int i = 0; i < size_of(t.where); ++i) t.amp[i] *= s;
}

Trajectory initial_trajectory() {
  // (|01> + |10>)/√2 on (NV1, photon) times (|00> + |11>)/√2 on (NV2, NV3).
  Trajectory t;
  for (int q1 = 0; q1 < 2; ++q1)
    for (int n2 = 0; n2 < 2; ++n2) {
      const int p = 1 - q1;
      const int q3 = n2;
      t.amp[8 * q1 + 4 * q3 + 2 * p + n2] = 0.5;
    }
  return t;
}

// (photon, nv2) Bell overlaps for the pair-13 block starting at `base`.
cd overlap_psi_minus(const Trajectory& t, int base) { return (t.amp[base + 1] - t.amp[base + 2]) * kInvSqrt2; }
cd overlap_psi_plus(const Trajectory& t, int base) { return (t.amp[base + 1] + t.amp[base + 2]) * kInvSqrt2; }

void absorb(Trajectory& t, double p_abs, double r_a1, Uniform& u) {
  if (t.where != Where::Present) return;
  std::array<cd, 4> cm{}, cp{};
  double nm = 0, np = 0;
  for (int b = 0; b < 4; ++b) {
    cm[b] = overlap_psi_minus(t, 4 * b);
    cp[b] = overlap_psi_plus(t, 4 * b);
    nm += std::norm(cm[b]);
    np += std::norm(cp[b]);
  }
  const double pa2 = p_abs * nm;
  const double pa1 = p_abs * r_a1 * np;
  const double x = u();
  if (x < pa2 || x < pa2 + pa1) {
    const bool to_a2 = x < pa2;
    Trajectory next;
    next.where = to_a2 ? Where::A2 : Where::A1;
    for (int b = 0; b < 4; ++b) next.amp[b] = to_a2 ? cm[b] : cp[b];
    t = next;
    normalize(t);
    return;
  }
  const double km = 1.0 - std::sqrt(1.0 - p_abs);
  const double kp = 1.0 - std::sqrt(1.0 - p_abs * r_a1);
  for (int b = 0; b < 4; ++b) {
    const int base = 4 * b;
    // |ψ−> = (|01> − |10>)/√2, |ψ+> = (|01> + |10>)/√2 over (photon, nv2).
    t.amp[base + 1] -= (km * cm[b] + kp * cp[b]) * kInvSqrt2;
    t.amp[base + 2] -= (-km * cm[b] + kp * cp[b]) * kInvSqrt2;
  }
  normalize(t);
}

void lose_photon(Trajectory& t, double p_loss, Uniform& u) {
  if (t.where != Where::Present || !(u() < p_loss)) return;
  double p0 = 0;
  for (int i = 0; i < 16; ++i)
    if (((i >> 1) & 1) == 0) p0 += std::norm(t.amp[i]);
  const int photon = u() < p0 ? 0 : 1;
  Trajectory next;
  next.where = Where::SpinOnly;
  for (int q = 0; q < 4; ++q)
    for (int n2 = 0; n2 < 2; ++n2) next.amp[2 * q + n2] = t.amp[4 * q + 2 * photon + n2];
  t = next;
  normalize(t);
}

// Flips the bit with value `mask` in every amplitude index.
void apply_x(Trajectory& t, int mask) {
  const int n = size_of(t.where);
  for (int i = 0; i < n; ++i)
    if ((i & mask) == 0) std::swap(t.amp[i], t.amp[i | mask]);
}

void dephase(Trajectory& t, double eta, Uniform& u) {
  const double p_flip = (1.0 - eta) / 2.0;
  int q1 = 0, q3 = 0, n2 = 0;
  switch (t.where) {
    case Where::Present: q1 = 8, q3 = 4, n2 = 1; break;
    case Where::SpinOnly: q1 = 4, q3 = 2, n2 = 1; break;
    default: q1 = 2, q3 = 1; break;
  }
  if (u() < p_flip) apply_x(t, q1);
  if (n2 && u() < p_flip) apply_x(t, n2);
  if (!n2) u();  // keep the draw count independent of the sector
  if (u() < p_flip) apply_x(t, q3);
}

void flip_photon(Trajectory& t, FlipKind kind) {
  if (t.where != Where::Present || kind == FlipKind::None) return;
  if (kind == FlipKind::Polarisation || kind == FlipKind::Both) apply_x(t, 2);
  if (kind == FlipKind::Phase || kind == FlipKind::Both)
    for (int i = 0; i < 16; ++i)
      if (i & 2) t.amp[i] = -t.amp[i];
}

std::array<cd, 4> bell_coefficients(BellLabel label) {
  const double h = kInvSqrt2;
  switch (label) {
    case BellLabel::PhiPlus: return {h, 0, 0, h};
    case BellLabel::PhiMinus: return {h, 0, 0, -h};
    case BellLabel::PsiPlus: return {0, h, h, 0};
    case BellLabel::PsiMinus: return {0, h, -h, 0};
  }
  return {};
}

// ⟨target|ρ_13|target⟩ after tracing out everything but NV1 and NV3.
double pair13_overlap(const Trajectory& t, BellLabel target) {
  const auto c = bell_coefficients(target);
  const int rest = size_of(t.where) / 4;  // dimension of the traced-out part
  double f = 0;
  for (int r = 0; r < rest; ++r) {
    cd a = 0;
    for (int b = 0; b < 4; ++b) a += std::conj(c[b]) * t.amp[rest * b + r];
    f += std::norm(a);
  }
  return f;
}

struct Herald {
  bool happened = false;
  bool dark = false;
  int round = 0;  // 0 for the closing parity measurement
  BellLabel target = BellLabel::PhiMinus;
  double fidelity = 0;
  bool unheralded_a2 = false;
};

Herald final_parity(const Trajectory& t, const ProtocolParams& params, Uniform& u) {
  Herald h;
  const double x1 = u(), x2 = u(), x3 = u();
  if (t.where != Where::Present) return h;
  std::array<std::array<double, 2>, 2> basis{};  // basis[outcome][bit]
  if (params.flip_observable == FlipObservable::XX)
    basis = {{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}};
  else
    basis = {{{1, 0}, {0, 1}}};

  std::array<std::array<cd, 4>, 4> projected{};  // outcome 2·sp + s2 → pair-13 amplitudes
  std::array<double, 4> prob{};
  for (int o = 0; o < 4; ++o) {
    const auto& bp = basis[o >> 1];
    const auto& b2 = basis[o & 1];
    for (int q = 0; q < 4; ++q) {
      cd a = 0;
      for (int p = 0; p < 2; ++p)
        for (int n = 0; n < 2; ++n) a += bp[p] * b2[n] * t.amp[4 * q + 2 * p + n];
      projected[o][q] = a;
      prob[o] += std::norm(a);
    }
  }
  int outcome = 3;
  double acc = 0;
  for (int o = 0; o < 4; ++o) {
    acc += prob[o];
    if (x1 < acc) {
      outcome = o;
      break;
    }
  }
  if (!(x2 < params.detector_eff) || !(x3 < params.detector_eff)) return h;

  Trajectory pair;
  pair.where = Where::A2;  // any 4-amplitude layout of (q1, q3)
  for (int q = 0; q < 4; ++q) pair.amp[q] = projected[outcome][q];
  normalize(pair);
  const bool even = ((outcome >> 1) ^ (outcome & 1)) == 0;
  h.happened = true;
  h.round = 0;
  h.target = final_parity_target(params.flip_observable, even);
  h.fidelity = pair13_overlap(pair, h.target);
  return h;
}

Herald simulate_one(const ProtocolParams& params, const std::vector<FlipKind>& schedule, double eta,
                    Uniform& u) {
  Trajectory t = initial_trajectory();
  FlipCount flips;
  for (int round = 1; round <= params.rounds; ++round) {
    absorb(t, params.p_abs, params.r_a1, u);
    const bool in_a2 = t.where == Where::A2;
    if (u() < (in_a2 ? params.p_qnd : params.p_dark)) {
      Herald h;
      h.happened = true;
      h.dark = !in_a2;
      h.round = round;
      h.target = epoch_target(flips);
      h.fidelity = pair13_overlap(t, h.target);
      return h;
    }
    lose_photon(t, params.p_loss, u);
    dephase(t, eta, u);
    const FlipKind kind = schedule[static_cast<std::size_t>(round - 1)];
    flip_photon(t, kind);
    flips = advance(flips, kind);
  }
  Herald h = params.approach == Approach::A ? final_parity(t, params, u) : Herald{};
  h.unheralded_a2 = t.where == Where::A2;
  return h;
}

struct Tally {
  std::vector<std::size_t> heralds_by_round;
  std::size_t heralds = 0;
  std::array<std::size_t, 4> per_target{};
  std::array<double, 4> fid_sum{};
  std::array<double, 4> fid_sq{};
  std::size_t dark = 0;
  std::size_t missed = 0;

  void merge(const Tally& o) {
    for (std::size_t i = 0; i < heralds_by_round.size(); ++i) heralds_by_round[i] += o.heralds_by_round[i];
    heralds += o.heralds;
    for (std::size_t k = 0; k < 4; ++k) {
      per_target[k] += o.per_target[k];
      fid_sum[k] += o.fid_sum[k];
      fid_sq[k] += o.fid_sq[k];
    }
    dark += o.dark;
    missed += o.missed;
  }
};

Estimate proportion(std::size_t hits, std::size_t n) {
  const double m = static_cast<double>(hits) / static_cast<double>(n);
  return {m, std::sqrt(m * (1.0 - m) / static_cast<double>(n))};
}

}  // namespace

TrajectoryResult run_trajectories(const ProtocolParams& params, std::size_t n_traj, std::uint64_t seed) {
  validate(params);
  if (n_traj == 0) throw std::invalid_argument("need at least one trajectory");
  const std::vector<FlipKind> schedule = build_schedule(params);
  const double eta = params.eta();
  const auto rounds = static_cast<std::size_t>(params.rounds);

  constexpr std::size_t kChunks = 64;
  std::vector<Tally> tallies(kChunks);
  for (auto& t : tallies) t.heralds_by_round.assign(rounds, 0);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < kChunks; c = next++) {
      Tally& tally = tallies[c];
      const std::size_t begin = n_traj * c / kChunks;
      const std::size_t end = n_traj * (c + 1) / kChunks;
      for (std::size_t i = begin; i < end; ++i) {
        Uniform u(seed, i);
        const Herald h = simulate_one(params, schedule, eta, u);
        if (h.unheralded_a2) ++tally.missed;
        if (!h.happened) continue;
        ++tally.heralds;
        if (h.round > 0) ++tally.heralds_by_round[static_cast<std::size_t>(h.round - 1)];
        if (h.dark) ++tally.dark;
        const std::size_t k = index_of(h.target);
        ++tally.per_target[k];
        tally.fid_sum[k] += h.fidelity;
        tally.fid_sq[k] += h.fidelity * h.fidelity;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>({hw, kChunks, n_traj}));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Tally total;
  total.heralds_by_round.assign(rounds, 0);
  for (const auto& t : tallies) total.merge(t);

  TrajectoryResult r;
  r.n_traj = n_traj;
  std::size_t running = 0;
  for (std::size_t l = 0; l < rounds; ++l) {
    running += total.heralds_by_round[l];
    r.cumulative_success.push_back(proportion(running, n_traj));
  }
  r.total_success = proportion(total.heralds, n_traj);
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t n = total.per_target[k];
    r.heralds_per_target[k] = n;
    if (n == 0) continue;
    const double mean = total.fid_sum[k] / static_cast<double>(n);
    const double var = n > 1 ? std::max(0.0, (total.fid_sq[k] - static_cast<double>(n) * mean * mean) /
                                                 static_cast<double>(n - 1))
                             : 0.0;
    r.fidelity_per_target[k] = Estimate{mean, std::sqrt(var / static_cast<double>(n))};
  }
  r.false_positive_rate = proportion(total.dark, n_traj);
  r.false_negative_rate = proportion(total.missed, n_traj);
  return r;
}

}  // namespace nvswap
