// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The relaydmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "relaydmt/analytic.hpp"
#include "relaydmt/exponent.hpp"

using namespace relaydmt;

namespace {

double closed_form(int n, int k, double r, double t) {
  if (r >= 1.0) return 0.0;
  if (t >= static_cast<double>(k) / (n + k)) return (n + k) * (1.0 - r);
  if (r <= t) return n + k - k * r / t;
  return n * (1.0 - r) / (1.0 - t);
}

}  // namespace

TEST_CASE("worked example") {
  const auto e = region_exponent(1, 2, 0.25, 0.5);
  CHECK(e.g_star == doctest::Approx(2.0));
  REQUIRE(e.argmin.size() == 3);
  CHECK(outage_constraint_lhs(1, 2, 0.5, e.argmin) <= 0.25 + 1e-9);
  CHECK(region_exponent(1, 2, 0.6, 0.5).g_star == doctest::Approx(0.8));
  CHECK(region_exponent(2, 1, 0.0, 0.3).g_star == doctest::Approx(3.0));
  CHECK(region_exponent(2, 1, 1.0, 0.3).g_star == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lp matches closed form and grid") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (int ti = 1; ti <= 9; ++ti) {
        for (int ri = 1; ri <= 19; ++ri) {
          const double t = ti / 10.0;
          const double r = ri / 20.0;
          const auto e = region_exponent(n, k, r, t);
          CHECK(std::abs(e.g_star - closed_form(n, k, r, t)) <= 1e-9);
          CHECK(e.g_star == doctest::Approx(hd_cutset_exponent({CutSide::Source, n, k, r, t})));
          CHECK(outage_constraint_lhs(n, k, t, e.argmin) <= r + 1e-9);
          CHECK(e.region.size() == 2);
          const auto g = grid_oracle(n, k, r, t, 0.01);
          CHECK(g.g_star >= e.g_star - 1e-9);
          CHECK(g.g_star <= e.g_star + (n + k) * 0.01 + 1e-9);
          CHECK(outage_constraint_lhs(n, k, t, g.argmin) <= r + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("exponent is monotone in r") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (double t : {0.2, 0.5, 0.8}) {
        double prev = region_exponent(n, k, 0.0, t).g_star;
        CHECK(prev == doctest::Approx(n + k));
        for (int i = 1; i <= 50; ++i) {
          const double cur = region_exponent(n, k, i / 50.0, t).g_star;
          CHECK(cur <= prev + 1e-12);
          prev = cur;
        }
      }
    }
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(region_exponent(1, 1, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(region_exponent(1, 1, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(region_exponent(0, 1, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(region_exponent(1, 1, 1.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(grid_oracle(1, 1, 0.5, 0.5, 0.05), std::invalid_argument);
  const double alpha[2] = {0.0, 0.0};
  CHECK_THROWS_AS(outage_constraint_lhs(1, 2, 0.5, alpha), std::invalid_argument);
}
