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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "relaydmt/analytic.hpp"

using namespace relaydmt;

namespace {

// Independent piecewise evaluation of (m - j)(n - j) interpolation.
double d_mn(int m, int n, double r) {
  const int top = std::min(m, n);
  if (r >= top) return 0.0;
  const int j = static_cast<int>(std::floor(r));
  const double d0 = (m - j) * (n - j);
  const double d1 = (m - j - 1) * (n - j - 1);
  return d0 + (d1 - d0) * (r - j);
}

std::vector<double> grid(double hi, int points = 1000) {
  std::vector<double> g;
  for (int i = 0; i <= points; ++i) g.push_back(hi * i / points);
  return g;
}

}  // namespace

TEST_CASE("full-duplex upper bound") {
  const auto c = fd_relay_upper(2, 2, 1);
  CHECK(approx_equal(c, mimo_dmt(2, 3)));
  CHECK(c.eval(0.0) == 6.0);
  CHECK(c.eval(1.0) == 2.0);
  CHECK(approx_equal(fd_relay_upper(1, 1, 1), make_curve({{0, 2}, {1, 0}})));
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for (int k = 1; k <= 3; ++k) {
        const auto u = fd_relay_upper(m, n, k);
        for (double r : grid(u.domain_max())) {
          CHECK(u.eval(r) == doctest::Approx(std::min(d_mn(m, n + k, r), d_mn(m + k, n, r))));
        }
      }
    }
  }
  CHECK(fd_relay_upper(3, 2, 2).eval(0.0) == 10.0);
}

TEST_CASE("decode-and-forward") {
  CHECK(fd_df_dmt(2, 2, 2).eval(1.0) == doctest::Approx(2.0));
  CHECK(fd_relay_upper(2, 2, 2).eval(1.0) == doctest::Approx(3.0));
  const auto df221 = fd_df_dmt(2, 2, 1);
  for (double r : {1.2, 1.5, 1.9, 2.0}) CHECK(df221.eval(r) == doctest::Approx(d_mn(2, 2, r)));
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for (int k = 1; k <= 3; ++k) {
        const auto df = fd_df_dmt(m, n, k);
        const auto up = fd_relay_upper(m, n, k);
        CHECK(df.domain_max() == std::min(m, n));
        CHECK(is_non_increasing(df));
        for (double r : grid(df.domain_max())) {
          CHECK(df.eval(r) <= up.eval(r) + 1e-12);
          const double brute = r <= std::min({m, n, k})
                                   ? std::min(d_mn(m + k, n, r), d_mn(m, n, r) + d_mn(m, k, r))
                                   : d_mn(m, n, r);
          CHECK(df.eval(r) == doctest::Approx(brute));
          if (m == 1 || n == 1) CHECK(df.eval(r) == doctest::Approx(up.eval(r)));
        }
      }
    }
  }
}

TEST_CASE("clustered curves") {
  const auto u = clustered_upper(2, 2, 2);
  CHECK(u.eval(0.5) == doctest::Approx(5.5));
  CHECK(u.eval(1.5) == doctest::Approx(1.0));
  CHECK(u.eval(1.0) == doctest::Approx(2.0));
  CHECK_FALSE(u.conjectured());
  CHECK(clustered_upper(3, 3, 1).conjectured());
  const auto u1 = clustered_upper(1, 3, 2);
  CHECK(u1.domain_max() == 1.0);
  for (double r : grid(1.0)) CHECK(u1.eval(r) == doctest::Approx(d_mn(3, 3, r)));

  const auto df = clustered_df_dmt(2, 2, 1);
  CHECK(df.eval(0.5) == doctest::Approx(4.0));
  CHECK(df.eval(1.5) == doctest::Approx(0.5));
  CHECK(df.eval(1.0) == doctest::Approx(1.0));
  const auto df111 = clustered_df_dmt(1, 1, 1);
  CHECK(df111.domain_max() == 1.0);
  CHECK(df111.eval(0.25) == doctest::Approx(1.5));

  for (int m = 1; m <= 2; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for (int k = 1; k <= 3; ++k) {
        const auto a = clustered_df_dmt(m, n, k);
        const auto b = clustered_upper(m, n, k);
        CHECK(is_non_increasing(a));
        CHECK(is_non_increasing(b));
        for (double r : grid(1.0 - 1e-9, 200)) CHECK(a.eval(r) == doctest::Approx(b.eval(r)));
      }
    }
  }
}

TEST_CASE("half-duplex cut exponents") {
  CHECK(hd_cutset_exponent({CutSide::Source, 1, 2, 0.25, 0.5}) == doctest::Approx(2.0));
  CHECK(hd_cutset_exponent({CutSide::Source, 1, 2, 0.6, 0.5}) == doctest::Approx(0.8));
  CHECK(hd_cutset_exponent({CutSide::Source, 1, 2, 0.25, 0.7}) == doctest::Approx(2.25));
  CHECK_THROWS_AS(hd_cutset_exponent({CutSide::Source, 1, 2, 0.25, 1.5}), std::invalid_argument);
  for (int nm = 1; nm <= 3; ++nm) {
    for (int k = 1; k <= 3; ++k) {
      for (int ti = 0; ti <= 10; ++ti) {
        for (int ri = 0; ri <= 10; ++ri) {
          const double t = ti / 10.0;
          const double r = ri / 10.0;
          CHECK(hd_cutset_exponent({CutSide::Source, nm, k, r, t}) ==
                doctest::Approx(hd_cutset_exponent({CutSide::Dest, nm, k, r, 1.0 - t})));
        }
      }
    }
  }
}

TEST_CASE("half-duplex static upper bound") {
  const auto a = hd_static_upper(1, 1, 1, 0.5);
  CHECK(a.d == doctest::Approx(1.0));
  CHECK(a.t_star == 0.5);
  CHECK(hd_static_upper(1, 1, 2, 0.0).d == doctest::Approx(3.0));
  const auto b = hd_static_upper(1, 1, 2, 0.5);
  CHECK(b.d < std::min(d_mn(1, 3, 0.5), d_mn(3, 1, 0.5)));
  // Oracle: brute force over a fine t grid.
  for (int k = 1; k <= 3; ++k) {
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double best = 0.0;
      for (int i = 0; i <= 100000; ++i) {
        const double t = i / 100000.0;
        best = std::max(best, std::min(hd_cutset_exponent({CutSide::Source, 1, k, r, t}),
                                       hd_cutset_exponent({CutSide::Dest, 1, k, r, t})));
      }
      CHECK(hd_static_upper(1, 1, k, r).d == doctest::Approx(best).epsilon(1e-6));
      // A single relay antenna loses nothing to half-duplexing.
      if (k == 1) CHECK(hd_static_upper(1, 1, k, r).d == doctest::Approx(2.0 * (1.0 - r)));
    }
  }
  CHECK_THROWS_AS(hd_static_upper(2, 2, 1, 0.5), std::invalid_argument);
}

TEST_CASE("ddf on the single-antenna relay") {
  const auto c = ddf_dmt_111();
  CHECK(c.eval(0.25) == doctest::Approx(1.5));
  CHECK(c.eval(0.75) == doctest::Approx(1.0 / 3.0));
  CHECK(c.eval(0.5) == doctest::Approx(1.0));
  CHECK(is_non_increasing(c));
}

TEST_CASE("marc curves") {
  const auto m = marc_curves();
  CHECK(m.cf.eval(0.7) == doctest::Approx(0.65));
  CHECK(m.cf.eval(2.0 / 3) == doctest::Approx(2.0 / 3));
  CHECK(m.cf.eval(0.8) == doctest::Approx(0.6));
  for (const auto& k : m.cf.knots()) CHECK_FALSE(k.is_jump());
  for (double r : grid(1.0)) {
    CHECK(m.cf.eval(r) <= m.upper.eval(r) + 1e-12);
    CHECK(m.ddf_lower.eval(r) <= m.upper.eval(r) + 1e-12);
    if (r >= 0.8) CHECK(m.cf.eval(r) == doctest::Approx(m.upper.eval(r)));
    if (r >= 2.0 / 3) CHECK(m.maf.eval(r) == doctest::Approx(m.upper.eval(r)));
    const double upper = r <= 0.5 ? 2.0 - r : 3.0 * (1.0 - r);
    CHECK(m.upper.eval(r) == doctest::Approx(upper));
    const double ddf = r <= 0.5 ? 2.0 - r : (r <= 2.0 / 3 ? 3.0 * (1.0 - r) : 2.0 * (1.0 - r) / r);
    CHECK(m.ddf_lower.eval(r) == doctest::Approx(ddf));
  }
  for (const auto* c : {&m.upper, &m.cf, &m.ddf_lower, &m.maf}) CHECK(is_non_increasing(*c));
}

TEST_CASE("two-relay and cooperative curves") {
  CHECK(two_relay_curve(false).eval(0.5) == doctest::Approx(1.5));
  const auto c = two_relay_curve(true);
  CHECK(c.eval(1.0) == 1.0);
  CHECK(c.eval(1.2) == 0.0);
  CHECK(c.eval(0.5) == doctest::Approx(2.5));
  CHECK(is_non_increasing(c));
  CHECK(coop_two_by_two_curve(CoopMode::Interference).eval(1.0) == doctest::Approx(1.0));
  CHECK(coop_two_by_two_curve(CoopMode::Interference).eval(0.0) == doctest::Approx(4.0));
  CHECK(coop_two_by_two_curve(CoopMode::Multicast).eval(0.5) == doctest::Approx(1.5));
  CHECK(coop_two_by_two_curve(CoopMode::Multicast, true).eval(0.5) == doctest::Approx(2.5));
}
