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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nvswap/params.hpp"

namespace nvswap {

struct Estimate {
  double mean = 0;
  double std_error = 0;
};

/// Monte-Carlo estimate of a protocol run from independent pure-state trajectories.
struct TrajectoryResult {
  std::size_t n_traj = 0;
  std::vector<Estimate> cumulative_success;
  Estimate total_success;
  std::array<std::optional<Estimate>, 4> fidelity_per_target;
  std::array<std::size_t, 4> heralds_per_target{};
  Estimate false_positive_rate;
  Estimate false_negative_rate;
};

/// Samples the per-round stochastic process one trajectory at a time. Each
/// trajectory owns a generator seeded from (seed, index), so the result does not
/// depend on evaluation order or thread count.
TrajectoryResult run_trajectories(const ProtocolParams& params, std::size_t n_traj, std::uint64_t seed);

}  // namespace nvswap
