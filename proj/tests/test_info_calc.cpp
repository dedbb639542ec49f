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
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "relaydmt/info_calc.hpp"

using namespace relaydmt;
using Complex = std::complex<double>;

namespace {

CMatrix ones(int rows, int cols) { return CMatrix::Constant(rows, cols, Complex(1.0, 0.0)); }

ChannelDraw unit_single_relay(int m = 1, int n = 1, int k = 1) {
  ChannelDraw d;
  d[LinkId::SR] = ones(k, m);
  d[LinkId::SD] = ones(n, m);
  d[LinkId::RD] = ones(n, k);
  return d;
}

PowerAllocation powers(std::vector<double> p) {
  PowerAllocation a;
  a.powers = p;
  for (double x : p) a.total += x;
  return a;
}

// log2 det via general LU, sharing nothing with the library path.
double log2_det_lu(const CMatrix& m) { return std::log2(std::abs(m.determinant())); }

// L_{S,RD}(N) straight from its definition.
double log2_l_direct(const CMatrix& h_sr, const CMatrix& h_sd, double ps_per_antenna, double n) {
  const int k = static_cast<int>(h_sr.rows());
  const int nn = static_cast<int>(h_sd.rows());
  CMatrix h(k + nn, h_sr.cols());
  h << h_sr, h_sd;
  CMatrix m = h * h.adjoint() * ps_per_antenna;
  for (int i = 0; i < k; ++i) m(i, i) += n + 1.0;
  for (int i = k; i < k + nn; ++i) m(i, i) += 1.0;
  return log2_det_lu(m);
}

double log2_srd_direct(const ChannelDraw& d, double ps, double pr) {
  const CMatrix& sd = d[LinkId::SD];
  const CMatrix& rd = d[LinkId::RD];
  CMatrix m = sd * sd.adjoint() * (ps / sd.cols()) + rd * rd.adjoint() * (pr / rd.cols());
  m.diagonal().array() += 1.0;
  return log2_det_lu(m);
}

// Scalar bisection for N = L(N) / U with L evaluated by determinants.
double scalar_fixed_point(const std::function<double(double)>& l_of_n, double u) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - l_of_n(hi) / u <= 0.0) hi *= 2.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid - l_of_n(mid) / u > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("log_det_capacity") {
  CHECK(log_det_capacity(ones(1, 1), 1.0) == doctest::Approx(1.0));
  CHECK(log_det_capacity(CMatrix::Identity(2, 2), 3.0) == doctest::Approx(4.0));
  CHECK(log_det_capacity(CMatrix::Zero(3, 2), 5.0) == 0.0);
  CHECK_THROWS_AS(log_det_capacity(ones(1, 1), -1.0), std::invalid_argument);
  CMatrix bad = ones(2, 2);
  bad(1, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(log_det_capacity(bad, 1.0), std::invalid_argument);

  const auto spec = single_relay_fd(2, 3, 3);
  for (int i = 0; i < 200; ++i) {
    const CMatrix h = sample_channels(spec, 5, i)[LinkId::SD];  // 3 x 2
    for (double s : {0.1, 1.0, 100.0}) {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(h * h.adjoint());
      double oracle = 0.0;
      for (int j = 0; j < 3; ++j) oracle += std::log2(1.0 + s * std::max(0.0, eig.eigenvalues()(j)));
      CHECK(log_det_capacity(h, s) == doctest::Approx(oracle).epsilon(1e-10));
      CHECK(log_det_capacity(h.adjoint(), s) == doctest::Approx(oracle).epsilon(1e-10));
    }
  }
}

TEST_CASE("full-duplex cut-set forms") {
  const auto d = unit_single_relay();
  const auto c = fd_cutset_bounds(d, powers({1, 1}));
  CHECK(c.i_cs == doctest::Approx(std::log2(3.0)));
  CHECK(c.i_cd == doctest::Approx(std::log2(5.0)));
  ChannelDraw z;
  z[LinkId::SR] = CMatrix::Zero(1, 1);
  z[LinkId::SD] = CMatrix::Zero(1, 1);
  z[LinkId::RD] = CMatrix::Zero(1, 1);
  const auto zc = fd_cutset_bounds(z, powers({1, 1}));
  CHECK(zc.i_cs == 0.0);
  CHECK(zc.i_cd == 0.0);
  CHECK(fd_cutset_bounds(d, powers({0, 1})).i_cs == 0.0);
}

TEST_CASE("geometry factorisation matches the defining determinant") {
  for (auto [m, n, k] : {std::tuple{2, 2, 1}, {2, 2, 2}, {1, 3, 2}, {3, 2, 3}, {4, 4, 4}}) {
    const auto spec = single_relay_fd(m, n, k);
    for (int i = 0; i < 50; ++i) {
      const auto d = sample_channels(spec, 11, i);
      const auto p = powers({7.0, 3.0});
      const auto g = single_relay_geometry(d, p);
      REQUIRE(g.k() == k);
      for (double l : g.lambda) CHECK(l >= 1.0);
      for (double noise : {0.0, 0.3, 4.0, 250.0}) {
        CHECK(g.log2_l(noise) ==
              doctest::Approx(log2_l_direct(d[LinkId::SR], d[LinkId::SD], 7.0 / m, noise))
                  .epsilon(1e-10));
        // L(N) >= L'(0): adding N to the relay block only grows the determinant.
        CHECK(g.log2_l(noise) >= g.log2_l(0.0) - 1e-12);
      }
      CHECK(log2_l_srd(d, p) == doctest::Approx(log2_srd_direct(d, 7.0, 3.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("fd_cf_rate examples") {
  const auto d = unit_single_relay();
  const auto r = fd_cf_rate(d, powers({1, 1}));
  CHECK(r.solve.noise_var == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.rate == doctest::Approx(std::log2(9.0 / 4.0)).epsilon(1e-12));
  CHECK(r.solve.converged);

  auto no_rd = d;
  no_rd[LinkId::RD] = CMatrix::Zero(1, 1);
  const auto r0 = fd_cf_rate(no_rd, powers({1, 1}));
  CHECK(std::isinf(r0.solve.noise_var));
  CHECK(r0.rate == doctest::Approx(1.0));
}

TEST_CASE("compression fixed point against closed forms") {
  // k = 1: N = L_sd lambda / (U - L_sd).
  const auto spec1 = single_relay_fd(2, 2, 1);
  for (int i = 0; i < 500; ++i) {
    const auto d = sample_channels(spec1, 3, i);
    const auto p = powers({20.0, 10.0});
    const auto g = single_relay_geometry(d, p);
    const double l_sd = std::exp(g.ln_l_sd);
    const double u = std::pow(2.0, log2_srd_direct(d, 20.0, 10.0));
    const auto r = fd_cf_rate(d, p);
    CHECK(r.solve.noise_var ==
          doctest::Approx(l_sd * g.lambda[0] / (u - l_sd)).epsilon(1e-9));
  }
  // k = 2: L(N) is a quadratic in N; fit it from three determinants and solve
  // N^2 U = L(N) directly.
  const auto spec2 = single_relay_fd(2, 2, 2);
  for (int i = 0; i < 500; ++i) {
    const auto d = sample_channels(spec2, 4, i);
    const auto p = powers({5.0, 5.0});
    auto l = [&](double n) {
      return std::pow(2.0, log2_l_direct(d[LinkId::SR], d[LinkId::SD], 2.5, n));
    };
    const double c0 = l(0.0);
    const double l1 = l(1.0);
    const double l2 = l(2.0);
    const double a = 0.5 * (l2 - 2.0 * l1 + c0);
    const double b = l1 - c0 - a;
    const double u = std::pow(2.0, log2_srd_direct(d, 5.0, 5.0));
    // (U - a) N^2 - b N - c0 = 0, positive root.
    const double qa = u - a;
    const double oracle = (b + std::sqrt(b * b + 4.0 * qa * c0)) / (2.0 * qa);
    const auto r = fd_cf_rate(d, p);
    if (qa > 0.0) CHECK(r.solve.noise_var == doctest::Approx(oracle).epsilon(1e-7));
  }
}

TEST_CASE("cf invariants on random draws") {
  for (auto [m, n, k] : {std::tuple{2, 2, 1}, {2, 2, 2}, {1, 1, 1}, {3, 2, 2}}) {
    const auto spec = single_relay_fd(m, n, k);
    for (int i = 0; i < 3000; ++i) {
      const auto d = sample_channels(spec, 99, i);
      const auto p = powers({200.0, 100.0});
      const auto g = single_relay_geometry(d, p);
      const double srd = log2_l_srd(d, p);
      const auto r = fd_cf_rate(d, p);
      REQUIRE(r.solve.converged);
      if (std::isfinite(r.solve.noise_var)) {
        CHECK(compression_residual(g, srd * std::numbers::ln2, r.solve.noise_var) <=
              1e-9 * (1.0 + r.solve.noise_var));
        CHECK(fd_cf_rate_product_form(g, srd, r.solve.noise_var) ==
              doctest::Approx(r.rate).epsilon(1e-10));
      }
      const auto same = fd_cutset_same_covariance(d, p);
      const auto kform = fd_cutset_bounds(d, p);
      CHECK(r.rate <= same.min() + 1e-9);
      CHECK(same.i_cs <= kform.i_cs + 1e-9);
      CHECK(same.i_cd <= kform.i_cd + 1e-9);
      // Union-bound chain: a CF outage needs one of the cuts within k bits.
      for (double target : {1.0, 5.0, 10.0, 15.0}) {
        if (r.rate < target) CHECK((same.i_cs < target + k || same.i_cd < target + k));
      }
      const auto df = fd_df_rates(d, p);
      CHECK(df.i_srd >= df.i_sd - 1e-12);
    }
  }
}

TEST_CASE("df rates") {
  const auto d = unit_single_relay();
  const auto r = fd_df_rates(d, powers({1, 1}));
  CHECK(r.i_sr == doctest::Approx(1.0));
  CHECK(r.i_sd == doctest::Approx(1.0));
  CHECK(r.i_srd == doctest::Approx(std::log2(3.0)));
  auto no_sr = d;
  no_sr[LinkId::SR] = CMatrix::Zero(1, 1);
  CHECK(fd_df_rates(no_sr, powers({1, 1})).i_sr == 0.0);
  CHECK(df_rate(r, 0.5) == r.i_srd);
  CHECK(df_rate(r, 1.5) == r.i_sd);
}

TEST_CASE("half-duplex cut-set and cf") {
  const auto d = unit_single_relay();
  const auto p = powers({1, 1});
  const auto fd = fd_cutset_bounds(d, p);
  const auto t1 = hd_cutset_bounds(d, p, 1.0);
  CHECK(t1.i_cs == doctest::Approx(fd.i_cs));
  CHECK(t1.i_cd == doctest::Approx(1.0));
  CHECK(hd_cutset_bounds(d, p, 0.0).i_cs == doctest::Approx(1.0));
  CHECK(hd_cutset_bounds(d, p, 0.5).i_cs == doctest::Approx((std::log2(3.0) + 1.0) / 2.0));
  CHECK_THROWS_AS(hd_cutset_bounds(d, p, 1.5), std::invalid_argument);

  const auto r = hd_cf_rate(d, p, 0.5);
  CHECK(r.solve.noise_var == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.rate == doctest::Approx(0.5 * std::log2(9.0 / 4.0) + 0.5).epsilon(1e-12));

  // As t -> 1 the relay stops transmitting, so U -> L_sd and the rate falls
  // back to the direct link.
  const auto near_one = hd_cf_rate(d, p, 1.0 - 1e-9);
  CHECK(near_one.rate == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(hd_cf_rate(d, p, 1.0).rate == doctest::Approx(1.0));
  CHECK(hd_cf_rate(d, p, 0.0).rate == doctest::Approx(1.0));

  auto no_rd = d;
  no_rd[LinkId::RD] = CMatrix::Zero(1, 1);
  CHECK(hd_cf_rate(no_rd, p, 0.5).rate == doctest::Approx(1.0));

  const auto spec = single_relay_hd(2, 2, 1, 0.5);
  for (int i = 0; i < 300; ++i) {
    const auto dr = sample_channels(spec, 8, i);
    const auto pr = powers({40.0, 20.0});
    for (double t : {0.2, 0.5, 0.8}) {
      const double lo = hd_cf_rate(dr, pr, t - 1e-4).rate;
      const double mid = hd_cf_rate(dr, pr, t).rate;
      const double hi = hd_cf_rate(dr, pr, t + 1e-4).rate;
      CHECK(std::abs(hi - mid) < 1e-2);
      CHECK(std::abs(mid - lo) < 1e-2);
      CHECK(std::abs(0.5 * (hi + lo) - mid) < 1e-6);
      // Dominated by the same-t cut-set with the same covariances.
      const auto g = single_relay_geometry(dr, pr);
      const double sd = g.ln_l_sd / std::numbers::ln2;
      const double srd = log2_l_srd(dr, pr);
      CHECK(mid <= t * g.log2_l(0.0) + (1 - t) * sd + 1e-9);
      CHECK(mid <= t * sd + (1 - t) * srd + 1e-9);
    }
  }
}

TEST_CASE("ddf rate") {
  const auto d = unit_single_relay();
  const auto p = powers({1, 1});
  const auto r = ddf_rate(d, p, 0.5);
  CHECK(r.t_decode == doctest::Approx(0.5));
  CHECK(r.rate == doctest::Approx(0.5 + 0.5 * std::log2(3.0)));

  auto strong = d;
  strong[LinkId::SR] = CMatrix::Constant(1, 1, Complex(std::sqrt(1e9), 0.0));
  const auto s = ddf_rate(strong, p, 0.5);
  CHECK(s.t_decode < 0.02);
  CHECK(s.rate == doctest::Approx(std::log2(3.0)).epsilon(0.01));

  auto none = d;
  none[LinkId::SR] = CMatrix::Zero(1, 1);
  const auto n = ddf_rate(none, p, 0.5);
  CHECK(n.t_decode == 1.0);
  CHECK(n.rate == doctest::Approx(1.0));
  CHECK_THROWS_AS(ddf_rate(d, p, -1.0), std::invalid_argument);
}

TEST_CASE("marc cf rates") {
  ChannelDraw d;
  for (LinkId l : {LinkId::S1R, LinkId::S2R, LinkId::S1D, LinkId::S2D, LinkId::RD}) d[l] = ones(1, 1);
  const auto p = powers({1, 1, 1});
  const auto r = marc_cf_rates(d, p, 0.5);
  // Oracle: L(N) = det([[N + 1 + 2, 2], [2, 3]]) = 3N + 5, U = 3 (4/3) = 4.
  auto l_of_n = [](double n) {
    CMatrix m(2, 2);
    m << n + 3.0, 2.0, 2.0, 3.0;
    return std::abs(m.determinant());
  };
  const double oracle = scalar_fixed_point(l_of_n, 4.0);
  CHECK(oracle == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.solve.noise_var == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(r.r1 == doctest::Approx(0.5 * std::log2(13.0 / 6.0) + 0.5).epsilon(1e-12));
  CHECK(r.r2 == doctest::Approx(r.r1));
  CHECK(r.rsum == doctest::Approx(0.5 * std::log2(10.0)).epsilon(1e-12));

  auto no_rd = d;
  no_rd[LinkId::RD] = CMatrix::Zero(1, 1);
  const auto z = marc_cf_rates(no_rd, p, 0.5);
  CHECK(std::isinf(z.solve.noise_var));
  CHECK(z.r1 == doctest::Approx(1.0));
  CHECK(z.rsum == doctest::Approx(std::log2(3.0)));
  CHECK_THROWS_AS(marc_cf_rates(d, p, 1.0), std::invalid_argument);

  // With user 2 silent, user 1 sees a plain half-duplex CF relay.
  const auto spec = marc_scenario(0.5);
  const auto single = single_relay_hd(1, 1, 1, 0.5);
  for (int i = 0; i < 300; ++i) {
    auto dm = sample_channels(spec, 21, i);
    dm[LinkId::S2R] = CMatrix::Zero(1, 1);
    dm[LinkId::S2D] = CMatrix::Zero(1, 1);
    ChannelDraw ds;
    ds[LinkId::SR] = dm[LinkId::S1R];
    ds[LinkId::SD] = dm[LinkId::S1D];
    ds[LinkId::RD] = dm[LinkId::RD];
    const auto pm = powers({30.0, 30.0, 30.0});
    for (double t : {0.4, 0.5, 0.6}) {
      const auto m = marc_cf_rates(dm, pm, t);
      const auto h = hd_cf_rate(ds, powers({30.0, 30.0}), t);
      CHECK(m.r1 == doctest::Approx(h.rate).epsilon(1e-10));
      CHECK(m.rsum == doctest::Approx(h.rate).epsilon(1e-10));
      CHECK(marc_ts_user_rate(dm, pm, 1, t).rate == doctest::Approx(h.rate).epsilon(1e-12));
    }
  }
}

TEST_CASE("two relay quantities") {
  ChannelDraw d;
  for (LinkId l : {LinkId::SR1, LinkId::SR2, LinkId::SD, LinkId::R1R2, LinkId::R1D, LinkId::R2D}) {
    d[l] = ones(1, 1);
  }
  const auto p = powers({1, 1, 1});
  const auto q = two_relay_df_quantities(d, p);
  CHECK(q.l_sr1r2d == doctest::Approx(2.0));
  CHECK(q.l_sr1d == doctest::Approx(std::log2(3.0)));
  CHECK(q.decode1 == doctest::Approx(1.0));

  ChannelDraw z;
  for (LinkId l : {LinkId::SR1, LinkId::SR2, LinkId::SD, LinkId::R1R2, LinkId::R1D, LinkId::R2D}) {
    z[l] = CMatrix::Zero(1, 1);
  }
  const auto qz = two_relay_df_quantities(z, p);
  CHECK(qz.decode1 == 0.0);
  CHECK(qz.decode2 == 0.0);
  CHECK(qz.l_sd == 0.0);
  CHECK(qz.l_sr1r2d == 0.0);

  const auto spec = two_relay_scenario(true, {10.0 / 21, 10.0 / 21, 1.0 / 21}, 10.0);
  const auto dc = sample_channels(spec, 1, 0);
  const auto pc = power_allocation(spec, 210.0);
  CHECK(two_relay_df_quantities(dc, pc).decode1 == doctest::Approx(std::log2(1.0 + 10.0 * 100.0)));
  CHECK(two_relay_mixed_rate(dc, pc, std::log2(1.0 + 1000.0)).r1_decodes);
  CHECK_FALSE(two_relay_mixed_rate(dc, pc, std::log2(1.0 + 1000.0) + 1e-6).r1_decodes);
}

TEST_CASE("two relay mixed rate") {
  ChannelDraw d;
  for (LinkId l : {LinkId::SR1, LinkId::SR2, LinkId::SD, LinkId::R1R2, LinkId::R1D, LinkId::R2D}) {
    d[l] = ones(1, 1);
  }
  const auto p = powers({1, 1, 1});
  const auto r = two_relay_mixed_rate(d, p, 0.5);
  CHECK(r.r1_decodes);
  auto l_of_n = [](double n) {
    CMatrix m(2, 2);
    m << n + 3.0, 2.0, 2.0, 3.0;
    return std::abs(m.determinant());
  };
  const double oracle = scalar_fixed_point(l_of_n, 4.0);
  CHECK(r.solve.noise_var == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(r.rate == doctest::Approx(std::log2(l_of_n(oracle) / (1.0 + oracle))).epsilon(1e-10));

  auto dead = d;
  dead[LinkId::R2D] = CMatrix::Zero(1, 1);
  dead[LinkId::SR2] = CMatrix::Zero(1, 1);
  dead[LinkId::R1R2] = CMatrix::Zero(1, 1);
  CHECK(two_relay_mixed_rate(dead, p, 0.5).rate == doctest::Approx(std::log2(3.0)));

  // R1 fails: only S feeds the compression.
  const auto f = two_relay_mixed_rate(d, p, 2.0);
  CHECK_FALSE(f.r1_decodes);
  CHECK(f.solve.noise_var == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.rate == doctest::Approx(std::log2(9.0 / 4.0)).epsilon(1e-10));
}

TEST_CASE("two relay and marc protocols stay under their cut-sets") {
  const auto tr = two_relay_scenario(false);
  const auto trc = two_relay_scenario(true, {10.0 / 21, 10.0 / 21, 1.0 / 21});
  for (const auto& spec : {tr, trc}) {
    const auto p = power_allocation(spec, 300.0);
    for (int i = 0; i < 3000; ++i) {
      const auto d = sample_channels(spec, 6, i);
      const auto cut = two_relay_cutset_same_covariance(d, p);
      for (double target : {1.0, 4.0, 8.0}) {
        const auto q = two_relay_df_quantities(d, p);
        const auto mix = two_relay_mixed_rate(d, p, target);
        if (cut.min() < target) {
          CHECK(two_relay_df_rate(q, target) < target);
          CHECK(mix.rate < target);
        }
      }
    }
  }
  const auto ms = marc_scenario(0.5);
  const auto p = power_allocation(ms, 300.0);
  for (int i = 0; i < 3000; ++i) {
    const auto d = sample_channels(ms, 6, i);
    const auto cut = marc_cutset_same_covariance(d, p);
    const auto r = marc_cf_rates(d, p, 0.5);
    CHECK(std::min(r.r1, r.rsum) <= cut.user1 + 1e-9);
    CHECK(std::min(r.r2, r.rsum) <= cut.user2 + 1e-9);
    CHECK(r.rsum <= cut.sum + 1e-9);
  }
}
