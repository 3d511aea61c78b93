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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nvswap/analytics.hpp"
#include "nvswap/params.hpp"

namespace nvswap {

/// A config problem tied to one key (empty for syntax errors without a key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat `key = value` configuration. See README for the key reference.
struct RunConfig {
  ProtocolParams params;
  std::set<std::string> keys;  // keys that appeared in the text

  std::uint64_t seed = 1;
  std::size_t trajectories = 0;
  std::vector<std::pair<double, int>> bounds_rows;  // (p_abs, L)
  std::vector<double> p_abs_axis;
  std::vector<double> p_loss_axis;
  bool optimize_l = true;
  std::optional<RoundObjective> objective;  // default_objective(approach) when unset
  int max_rounds = 64;
  std::size_t hops = 1;

  bool has(const std::string& key) const { return keys.count(key) > 0; }
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError naming the first missing key for `command`
/// (run, bounds, sweep, chain, optimize).
void require_keys(const RunConfig& config, std::string_view command);

}  // namespace nvswap
