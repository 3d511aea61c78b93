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

#include <cmath>

#include "nvswap/analytics.hpp"
#include "test_support.hpp"

using namespace nvswap;

namespace {

// Term-by-term sums, independent of the closed forms.
double fn_sum(double p_abs, double p_qnd, int l) {
  double s = 0;
  for (int i = 0; i < l; ++i) s += std::pow((1 - p_abs) * p_qnd, i);
  return p_abs * (1 - p_qnd) * s;
}

double fp_sum(double p_abs, double p_dark, int l) {
  double s = 0;
  for (int i = 0; i < l; ++i) s += std::pow((1 - p_abs) * (1 - p_dark), i);
  return p_dark * (1 - p_abs) * s;
}

}  // namespace

TEST_CASE("bounds agree with explicit sums") {
  for (double p_abs : {0.0, 0.01, 0.25, 0.9, 1.0})
    for (int l : {1, 4, 40}) {
      CHECK(false_negative_bound(p_abs, 0.99, l) == doctest::Approx(fn_sum(p_abs, 0.99, l)).epsilon(1e-12));
      CHECK(false_positive_bound(p_abs, 2e-4, l) == doctest::Approx(fp_sum(p_abs, 2e-4, l)).epsilon(1e-12));
    }
  CHECK(false_negative_bound(0.0, 0.99, 10) == 0.0);
  CHECK(false_positive_per_dark(0.0, 0.0, 7) == doctest::Approx(7.0));  // x = 1 limit
  CHECK(false_negative_per_qnd_miss(0.3, 1.0, 0) == 0.0);
}

TEST_CASE("parameter estimators") {
  CHECK(db_to_probability(0.0) == 0.0);
  CHECK(db_to_probability(10.0) == doctest::Approx(0.9));
  CHECK(probability_to_db(db_to_probability(0.3)) == doctest::Approx(0.3));
  CHECK(dephasing_factor(0.0, 1.0) == 1.0);
  CHECK(lorentzian_suppression(0.0, 1.0) == 1.0);
  CHECK(lorentzian_suppression(2.0, 1.0) == doctest::Approx(0.2));
  CHECK(spectral_width(1.0) == doctest::Approx(1.0 / 3.14159265358979));
  CHECK_THROWS(lorentzian_suppression(1.0, 0.0));
  CHECK_THROWS(probability_to_db(1.0));
}

TEST_CASE("round candidates") {
  CHECK(round_candidates(Approach::A, 8) == std::vector<int>{2, 4, 6, 8});
  CHECK(round_candidates(Approach::B, 12) == std::vector<int>{4, 8, 12});
  const auto p = with_rounds(test::table_row(Approach::B, 0.5, 16), 24);
  CHECK(p.l_z == 6);
  CHECK(p.l_x == 12);
}

TEST_CASE("optimization picks the best feasible candidate") {
  const auto p = test::table_row(Approach::B, 0.9, 8);
  const auto s = optimize_rounds(p, MaxSuccessAtMinFidelity{0.99}, 32);
  REQUIRE(s.best.has_value());
  for (const auto& c : s.candidates)
    if (c.feasible) CHECK(c.total_success <= s.best->total_success);
  CHECK(*s.best->min_fidelity >= 0.99);

  const auto none = optimize_rounds(p, MaxSuccessAtMinFidelity{1.0}, 16);
  CHECK_FALSE(none.best.has_value());

  // fidelity_weight = 0 reduces to plain success maximization.
  const auto w = optimize_rounds(p, WeightedObjective{0.0}, 16);
  REQUIRE(w.best.has_value());
  for (const auto& c : w.candidates) CHECK(c.total_success <= w.best->total_success + 1e-15);
}
