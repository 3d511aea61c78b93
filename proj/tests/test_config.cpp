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

#include "doctest.h"

#include "nvswap/config.hpp"

using namespace nvswap;

TEST_CASE("parses a full config") {
  const auto c = parse_config(R"(
# table row
approach = A
p_abs = 0.3      # per pass
r_a1 = 1e-4
loss_db = 0.3
tau_ns = 200
t2_us = 100
rounds = 20
seed = 42
trajectories = 1000
bounds_rows = 0.25:10, 0.9:4
p_abs_axis = 0.1:0.9:5
p_loss_axis = 0.01, 0.066
hops = 3
schedule = none, phase, both, polarisation, none, none, none, none, none, none, none, none, none, none, none, none, none, none, none, none
)");
  CHECK(c.params.approach == Approach::A);
  CHECK(c.params.p_abs == 0.3);
  CHECK(c.params.p_loss == doctest::Approx(0.0668).epsilon(1e-3));
  CHECK(c.params.tau == doctest::Approx(200e-9));
  CHECK(c.params.t2 == doctest::Approx(100e-6));
  CHECK(c.params.rounds == 20);
  CHECK(c.seed == 42);
  CHECK(c.trajectories == 1000);
  REQUIRE(c.bounds_rows.size() == 2);
  CHECK(c.bounds_rows[1] == std::pair<double, int>{0.9, 4});
  CHECK(c.p_abs_axis.size() == 5);
  CHECK(c.p_abs_axis[2] == doctest::Approx(0.5));
  CHECK(c.p_loss_axis == std::vector<double>{0.01, 0.066});
  CHECK(c.hops == 3);
  REQUIRE(c.params.schedule_override.has_value());
  CHECK((*c.params.schedule_override)[2] == FlipKind::Both);
  CHECK_FALSE(c.objective.has_value());
  CHECK(c.has("loss_db"));
}

TEST_CASE("approach B derives flip periods from rounds") {
  const auto c = parse_config("approach = B\nrounds = 24\n");
  CHECK(c.params.l_z == 6);
  CHECK(c.params.l_x == 12);
}

TEST_CASE("objective keys") {
  auto c = parse_config("objective = weighted\nfidelity_weight = 0.7\n");
  REQUIRE(c.objective.has_value());
  CHECK(std::get<WeightedObjective>(*c.objective).fidelity_weight == 0.7);
  c = parse_config("fidelity_threshold = 0.95\n");
  CHECK(std::get<MaxSuccessAtMinFidelity>(*c.objective).threshold == 0.95);
  CHECK_THROWS_AS(parse_config("objective = weighted\nfidelity_threshold = 0.9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("objective = best\n"), ConfigError);
}

TEST_CASE("errors name the offending key") {
  auto key_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of("p_abs = 1.5\n") == "p_abs");
  CHECK(key_of("p_abs = abc\n") == "p_abs");
  CHECK(key_of("colour = red\n") == "colour");
  CHECK(key_of("rounds = 4\nrounds = 8\n") == "rounds");
  CHECK(key_of("p_loss = 0.1\nloss_db = 0.3\n") == "loss_db");
  CHECK(key_of("approach = C\n") == "approach");
  CHECK(key_of("bounds_rows = 0.5\n") == "bounds_rows");
  CHECK(key_of("schedule = flop\n") == "schedule");
  CHECK(key_of("p_dark =\n") == "p_dark");
  CHECK(key_of("just text\n") == "");
}

TEST_CASE("required keys per command") {
  const auto c = parse_config("approach = B\nrounds = 16\n");
  CHECK_THROWS_WITH_AS(require_keys(c, "run"), doctest::Contains("p_abs"), ConfigError);
  CHECK_THROWS_WITH_AS(require_keys(c, "bounds"), doctest::Contains("bounds_rows"), ConfigError);
  CHECK_THROWS_WITH_AS(require_keys(c, "sweep"), doctest::Contains("p_abs_axis"), ConfigError);
  CHECK_THROWS_AS(require_keys(c, "dance"), ConfigError);
  CHECK_NOTHROW(require_keys(parse_config("p_abs = 0.5\nrounds = 16\n"), "run"));
}
