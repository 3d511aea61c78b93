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

#include "nvswap/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nvswap/sweep.hpp"

namespace nvswap {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& key, std::string_view v) {
  double x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError(key, "expected a number, got '" + std::string(v) + "'");
  return x;
}

long long to_integer(const std::string& key, std::string_view v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(key, "expected an integer, got '" + std::string(v) + "'");
  return x;
}

std::size_t to_count(const std::string& key, std::string_view v) {
  const long long x = to_integer(key, v);
  if (x < 0) throw ConfigError(key, "must be non-negative");
  return static_cast<std::size_t>(x);
}

double to_probability(const std::string& key, std::string_view v) {
  const double x = to_double(key, v);
  if (!(x >= 0 && x <= 1)) throw ConfigError(key, "must lie in [0, 1], got " + std::string(v));
  return x;
}

bool to_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + std::string(v) + "'");
}

// "a, b, c" or "lo:hi:n"
std::vector<double> to_axis(const std::string& key, std::string_view v) {
  if (v.find(':') != std::string_view::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3) throw ConfigError(key, "range must be lo:hi:n");
    const std::size_t n = to_count(key, parts[2]);
    if (n == 0) throw ConfigError(key, "range needs at least one point");
    return linspace(to_double(key, parts[0]), to_double(key, parts[1]), n);
  }
  std::vector<double> out;
  for (auto item : split(v, ',')) out.push_back(to_double(key, item));
  return out;
}

FlipKind to_flip(const std::string& key, std::string_view v) {
  if (v == "none" || v == "-") return FlipKind::None;
  if (v == "phase" || v == "Z") return FlipKind::Phase;
  if (v == "polarisation" || v == "polarization" || v == "X") return FlipKind::Polarisation;
  if (v == "both" || v == "ZX") return FlipKind::Both;
  throw ConfigError(key, "unknown flip '" + std::string(v) + "' (none, phase, polarisation, both)");
}

using Setter = std::function<void(RunConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"approach",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         if (v == "A") c.params.approach = Approach::A;
         else if (v == "B") c.params.approach = Approach::B;
         else throw ConfigError(k, "expected A or B");
       }},
      {"p_abs", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.p_abs = to_probability(k, v); }},
      {"r_a1", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.r_a1 = to_probability(k, v); }},
      {"p_qnd", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.p_qnd = to_probability(k, v); }},
      {"p_dark", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.p_dark = to_probability(k, v); }},
      {"p_loss", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.p_loss = to_probability(k, v); }},
      {"loss_db",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         const double db = to_double(k, v);
         if (!(db >= 0)) throw ConfigError(k, "must be non-negative");
         c.params.p_loss = db_to_probability(db);
       }},
      {"tau_ns",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         const double t = to_double(k, v);
         if (!(t >= 0)) throw ConfigError(k, "must be non-negative");
         c.params.tau = t * 1e-9;
       }},
      {"t2_us",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         const double t = to_double(k, v);
         if (!(t > 0)) throw ConfigError(k, "must be positive");
         c.params.t2 = t * 1e-6;
       }},
      {"rounds", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.rounds = static_cast<int>(to_integer(k, v)); }},
      {"l_z", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.l_z = static_cast<int>(to_integer(k, v)); }},
      {"l_x", [](RunConfig& c, const std::string& k, std::string_view v) { c.params.l_x = static_cast<int>(to_integer(k, v)); }},
      {"detector_eff",
       [](RunConfig& c, const std::string& k, std::string_view v) { c.params.detector_eff = to_probability(k, v); }},
      {"flip_observable",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         if (v == "XX") c.params.flip_observable = FlipObservable::XX;
         else if (v == "ZZ") c.params.flip_observable = FlipObservable::ZZ;
         else throw ConfigError(k, "expected XX or ZZ");
       }},
      {"schedule",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         std::vector<FlipKind> s;
         for (auto item : split(v, ',')) s.push_back(to_flip(k, item));
         c.params.schedule_override = std::move(s);
       }},
      {"seed",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.seed = static_cast<std::uint64_t>(to_count(k, v));
       }},
      {"trajectories", [](RunConfig& c, const std::string& k, std::string_view v) { c.trajectories = to_count(k, v); }},
      {"bounds_rows",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.bounds_rows.clear();
         for (auto item : split(v, ',')) {
           const auto pair = split(item, ':');
           if (pair.size() != 2) throw ConfigError(k, "rows are p_abs:L pairs, got '" + std::string(item) + "'");
           const long long l = to_integer(k, pair[1]);
           if (l < 1) throw ConfigError(k, "L must be at least 1");
           c.bounds_rows.emplace_back(to_probability(k, pair[0]), static_cast<int>(l));
         }
       }},
      {"p_abs_axis", [](RunConfig& c, const std::string& k, std::string_view v) { c.p_abs_axis = to_axis(k, v); }},
      {"p_loss_axis", [](RunConfig& c, const std::string& k, std::string_view v) { c.p_loss_axis = to_axis(k, v); }},
      {"optimize_l", [](RunConfig& c, const std::string& k, std::string_view v) { c.optimize_l = to_bool(k, v); }},
      {"max_rounds",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         const long long m = to_integer(k, v);
         if (m < 2) throw ConfigError(k, "must be at least 2");
         c.max_rounds = static_cast<int>(m);
       }},
      {"objective", [](RunConfig&, const std::string&, std::string_view) {}},
      {"fidelity_threshold", [](RunConfig&, const std::string&, std::string_view) {}},
      {"fidelity_weight", [](RunConfig&, const std::string&, std::string_view) {}},
      {"hops",
       [](RunConfig& c, const std::string& k, std::string_view v) {
         c.hops = to_count(k, v);
         if (c.hops < 1) throw ConfigError(k, "must be at least 1");
       }},
  };
  return table;
}

// objective / fidelity_threshold / fidelity_weight interact, so they are resolved together.
void resolve_objective(RunConfig& c, const std::map<std::string, std::string>& raw) {
  const auto get = [&](const char* k) -> std::optional<std::string> {
    const auto it = raw.find(k);
    return it == raw.end() ? std::nullopt : std::optional<std::string>(it->second);
  };
  const auto kind = get("objective");
  if (kind && *kind != "max_success" && *kind != "weighted")
    throw ConfigError("objective", "expected max_success or weighted");
  const bool weighted = kind && *kind == "weighted";
  if (weighted) {
    if (get("fidelity_threshold")) throw ConfigError("fidelity_threshold", "only applies to objective = max_success");
    WeightedObjective w;
    if (auto v = get("fidelity_weight")) w.fidelity_weight = to_probability("fidelity_weight", *v);
    c.objective = w;
    return;
  }
  if (get("fidelity_weight")) throw ConfigError("fidelity_weight", "only applies to objective = weighted");
  if (auto v = get("fidelity_threshold")) {
    c.objective = MaxSuccessAtMinFidelity{to_probability("fidelity_threshold", *v)};
  } else if (kind) {
    c.objective = MaxSuccessAtMinFidelity{};
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::map<std::string, std::string> raw;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key");
    if (c.keys.count(key)) throw ConfigError(key, "given twice");
    if (value.empty()) throw ConfigError(key, "missing value");
    it->second(c, key, value);
    c.keys.insert(key);
    raw[key] = std::string(value);
  }
  if (c.has("p_loss") && c.has("loss_db")) throw ConfigError("loss_db", "give either p_loss or loss_db, not both");
  resolve_objective(c, raw);

  // For approach B the flip periods default to L/4 and L/2.
  if (c.params.approach == Approach::B && c.has("rounds")) {
    if (!c.has("l_z")) c.params.l_z = c.params.rounds / 4;
    if (!c.has("l_x")) c.params.l_x = c.params.rounds / 2;
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void require_keys(const RunConfig& config, std::string_view command) {
  std::vector<std::string> needed;
  if (command == "run") needed = {"p_abs", "rounds"};
  else if (command == "bounds") needed = {"bounds_rows"};
  else if (command == "sweep") needed = {"p_abs_axis", "p_loss_axis"};
  else if (command == "chain") needed = {"p_abs", "rounds", "hops"};
  else if (command == "optimize") needed = {"p_abs"};
  else throw ConfigError("", "unknown command '" + std::string(command) + "'");
  if (command == "sweep" && !config.optimize_l) needed.push_back("rounds");
  for (const auto& k : needed)
    if (!config.has(k)) throw ConfigError(k, "required for '" + std::string(command) + "' but missing");
}

}  // namespace nvswap
