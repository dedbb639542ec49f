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
#include "relaydmt/network_model.hpp"
#include "relaydmt/philox.hpp"

using namespace relaydmt;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Pearson chi-square for a 2x2 table of sign pairs.
double chi_square_2x2(const long long table[2][2]) {
  const double n = table[0][0] + table[0][1] + table[1][0] + table[1][1];
  double stat = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double row = table[i][0] + table[i][1];
      const double col = table[0][j] + table[1][j];
      const double expected = row * col / n;
      stat += (table[i][j] - expected) * (table[i][j] - expected) / expected;
    }
  }
  return stat;
}

// 99.9% quantile of chi-square with one degree of freedom.
constexpr double kChi2Crit = 10.828;

}  // namespace

TEST_CASE("philox4x64-10 known answers") {
  CHECK(philox4x64_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                      0x7e68b68aec7ba23bULL});
  const std::uint64_t ones = ~0ULL;
  CHECK(philox4x64_10({ones, ones, ones, ones}, {ones, ones}) ==
        PhiloxCounter{0x87b092c3013fe90bULL, 0x438c3c67be8d0224ULL, 0x9cc7d7c69cd777b6ULL,
                      0xa09caebf594f0ba0ULL});
  CHECK(philox4x64_10({6, 6, 7, 8}, {0x0123456789abcdefULL, 0xfedcba9876543210ULL}) ==
        PhiloxCounter{0x1b6b1530de5612ceULL, 0x2532e591e8df8183ULL, 0x6f75f9117fcfd3deULL,
                      0x07ce9de7c5d9ce22ULL});
}

TEST_CASE("unit conversion stays in the open interval") {
  CHECK(u64_to_open_unit(0) > 0.0);
  CHECK(u64_to_open_unit(~0ULL) < 1.0);
}

TEST_CASE("scenario validation lists every violation") {
  auto s = single_relay_fd(2, 2, 1);
  CHECK(s.violations().empty());
  s.listen_fraction = 0.5;
  s.power_split = {0.7, 0.7};
  s.antennas.relay = 0;
  s.sigma2 = -1.0;
  const auto v = s.violations();
  CHECK(contains(v, "listen_fraction"));
  CHECK(contains(v, "power_split"));
  CHECK(contains(v, "antennas.relay"));
  CHECK(contains(v, "sigma2"));
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  auto hd = single_relay_hd(2, 2, 1, 0.5);
  CHECK(hd.violations().empty());
  hd.listen_fraction.reset();
  CHECK(contains(hd.violations(), "listen_fraction"));

  auto tr = two_relay_scenario(true, {10.0 / 21, 10.0 / 21, 1.0 / 21});
  CHECK(tr.violations().empty());
  tr.zones[LinkId::SR1] = LinkZone::awgn_zone(0.0);
  tr.zones[LinkId::SR] = LinkZone::rayleigh();
  CHECK(contains(tr.violations(), "zones.SR1"));
  CHECK(contains(tr.violations(), "zones.SR:"));
}

TEST_CASE("link shapes follow the receive x transmit convention") {
  const auto s = single_relay_fd(3, 2, 4, {0.5, 0.5});
  CHECK(s.link_shape(LinkId::SR) == std::pair{4, 3});
  CHECK(s.link_shape(LinkId::SD) == std::pair{2, 3});
  CHECK(s.link_shape(LinkId::RD) == std::pair{2, 4});
  const auto d = sample_channels(s, 1, 0);
  CHECK(d[LinkId::SR].rows() == 4);
  CHECK(d[LinkId::SR].cols() == 3);
  CHECK(d[LinkId::RD].cols() == 4);
}

TEST_CASE("draws are deterministic") {
  const auto s = single_relay_fd(2, 2, 2);
  const auto a = sample_channels(s, 42, 17);
  const auto b = sample_channels(s, 42, 17);
  const auto c = sample_channels(s, 42, 18);
  const auto d = sample_channels(s, 43, 17);
  for (LinkId l : s.links()) {
    CHECK(a[l] == b[l]);
    CHECK(a[l] != c[l]);
    CHECK(a[l] != d[l]);
  }
}

TEST_CASE("clustered links are sqrt(G), rank one, and leave other streams alone") {
  const auto plain = two_relay_scenario(false, {10.0 / 21, 10.0 / 21, 1.0 / 21});
  const auto clustered = two_relay_scenario(true, {10.0 / 21, 10.0 / 21, 1.0 / 21}, 10.0);
  const auto a = sample_channels(plain, 9, 5);
  const auto b = sample_channels(clustered, 9, 5);
  CHECK(b[LinkId::SR1](0, 0) == std::complex<double>(std::sqrt(10.0), 0.0));
  CHECK(b[LinkId::R2D](0, 0) == std::complex<double>(std::sqrt(10.0), 0.0));
  for (LinkId l : {LinkId::SR2, LinkId::SD, LinkId::R1R2, LinkId::R1D}) CHECK(a[l] == b[l]);

  auto s = single_relay_fd(1, 1, 2);
  s.zones[LinkId::SR] = LinkZone::awgn_zone(10.0);
  const auto d = sample_channels(s, 1, 0);
  REQUIRE(d[LinkId::SR].rows() == 2);
  REQUIRE(d[LinkId::SR].cols() == 1);
  CHECK(d[LinkId::SR](0, 0) == std::complex<double>(std::sqrt(10.0), 0.0));
  CHECK(d[LinkId::SR](1, 0) == std::complex<double>(std::sqrt(10.0), 0.0));

  auto wide = single_relay_fd(3, 3, 2);
  wide.zones[LinkId::SD] = LinkZone::awgn_zone(4.0);
  const auto w = sample_channels(wide, 3, 1);
  Eigen::JacobiSVD<CMatrix> svd(w[LinkId::SD]);
  const auto sv = svd.singularValues();
  CHECK(sv(1) < 1e-12 * sv(0));
}

TEST_CASE("rayleigh entries have the configured per-part variance") {
  const auto s = direct_scenario(1, 1);
  const int n = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto h = sample_channels(s, 2024, i)[LinkId::SD](0, 0);
    sum += h.real() + h.imag();
    sum_sq += h.real() * h.real() + h.imag() * h.imag();
  }
  const double mean = sum / (2.0 * n);
  const double var = sum_sq / (2.0 * n) - mean * mean;
  CHECK(std::abs(mean) < 0.005);
  CHECK(var == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("sign bits of neighbouring draws are independent") {
  const auto s = single_relay_fd(2, 2, 1);
  const int n = 100000;
  long long consecutive[2][2] = {};
  long long cross_link[2][2] = {};
  long long same_block[2][2] = {};
  bool prev = false;
  for (int i = 0; i < n; ++i) {
    const auto d = sample_channels(s, 77, i);
    const bool sd = d[LinkId::SD](0, 0).real() > 0;
    const bool sr = d[LinkId::SR](0, 0).real() > 0;
    const bool sd2 = d[LinkId::SD](1, 0).real() > 0;
    if (i > 0) ++consecutive[prev][sd];
    ++cross_link[sd][sr];
    ++same_block[sd][sd2];
    prev = sd;
  }
  CHECK(chi_square_2x2(consecutive) < kChi2Crit);
  CHECK(chi_square_2x2(cross_link) < kChi2Crit);
  CHECK(chi_square_2x2(same_block) < kChi2Crit);
}

TEST_CASE("power allocation and target rate") {
  const auto fig5 = single_relay_fd(2, 2, 1, {2.0 / 3, 1.0 / 3});
  const auto p = power_allocation(fig5, 30.0);
  CHECK(p[0] == doctest::Approx(20.0));
  CHECK(p[1] == doctest::Approx(10.0));
  const auto fig13 = two_relay_scenario(true, {10.0 / 21, 10.0 / 21, 1.0 / 21});
  const auto q = power_allocation(fig13, 21.0);
  CHECK(q[0] == doctest::Approx(10.0));
  CHECK(q[1] == doctest::Approx(10.0));
  CHECK(q[2] == doctest::Approx(1.0));
  CHECK(power_allocation(direct_scenario(1, 1), 5.0)[0] == 5.0);
  CHECK_THROWS_AS(power_allocation(fig5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(power_allocation(fig5, -3.0), std::invalid_argument);

  CHECK(target_rate(1.5, 1024.0) == doctest::Approx(15.0));
  CHECK(target_rate(0.0, 7.0) == 0.0);
  CHECK(target_rate(1.0, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(target_rate(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(target_rate(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("names round trip") {
  for (int i = 0; i < kLinkCount; ++i) {
    const auto l = static_cast<LinkId>(i);
    CHECK(parse_link(to_string(l)) == l);
  }
  CHECK(parse_scenario_kind("two_relay") == ScenarioKind::TwoRelay);
  CHECK_FALSE(parse_scenario_kind("bogus").has_value());
}
