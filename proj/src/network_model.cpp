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

#include "relaydmt/network_model.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "relaydmt/philox.hpp"

namespace relaydmt {
namespace {

// Second key word; fixed so that the seed alone selects the stream family.
constexpr std::uint64_t kChannelKey = 0x72656c6179646d74ULL;  // "relaydmt"

constexpr const char* kLinkNames[kLinkCount] = {"SR",  "SD",  "RD",  "S1R", "S2R",  "S1D",
                                                "S2D", "SR1", "SR2", "R1R2", "R1D", "R2D"};

std::size_t expected_split_size(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Direct:
      return 1;
    case ScenarioKind::SingleRelayFD:
    case ScenarioKind::SingleRelayHD:
      return 2;
    case ScenarioKind::Marc:
    case ScenarioKind::TwoRelay:
      return 3;
  }
  return 0;
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::SingleRelayFD:
      return "single_relay_fd";
    case ScenarioKind::SingleRelayHD:
      return "single_relay_hd";
    case ScenarioKind::Marc:
      return "marc";
    case ScenarioKind::TwoRelay:
      return "two_relay";
    case ScenarioKind::Direct:
      return "direct";
  }
  return "?";
}

const char* to_string(LinkId link) { return kLinkNames[static_cast<int>(link)]; }

std::optional<ScenarioKind> parse_scenario_kind(const std::string& s) {
  for (auto k : {ScenarioKind::SingleRelayFD, ScenarioKind::SingleRelayHD, ScenarioKind::Marc,
                 ScenarioKind::TwoRelay, ScenarioKind::Direct}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<LinkId> parse_link(const std::string& s) {
  for (int i = 0; i < kLinkCount; ++i) {
    if (s == kLinkNames[i]) return static_cast<LinkId>(i);
  }
  return std::nullopt;
}

bool ScenarioSpec::half_duplex() const {
  return kind == ScenarioKind::SingleRelayHD || kind == ScenarioKind::Marc;
}

std::vector<LinkId> ScenarioSpec::links() const {
  switch (kind) {
    case ScenarioKind::Direct:
      return {LinkId::SD};
    case ScenarioKind::SingleRelayFD:
    case ScenarioKind::SingleRelayHD:
      return {LinkId::SR, LinkId::SD, LinkId::RD};
    case ScenarioKind::Marc:
      return {LinkId::S1R, LinkId::S2R, LinkId::S1D, LinkId::S2D, LinkId::RD};
    case ScenarioKind::TwoRelay:
      return {LinkId::SR1, LinkId::SR2, LinkId::SD, LinkId::R1R2, LinkId::R1D, LinkId::R2D};
  }
  return {};
}

std::pair<int, int> ScenarioSpec::link_shape(LinkId link) const {
  const int m = antennas.source;
  const int k = antennas.relay;
  const int n = antennas.dest;
  switch (link) {
    case LinkId::SR:
      return {k, m};
    case LinkId::SD:
      return {n, m};
    case LinkId::RD:
      return {n, k};
    default:
      return {1, 1};
  }
}

LinkZone ScenarioSpec::zone(LinkId link) const {
  auto it = zones.find(link);
  return it == zones.end() ? LinkZone::rayleigh() : it->second;
}

std::vector<std::string> ScenarioSpec::violations() const {
  std::vector<std::string> out;
  auto antenna_ok = [&](const char* name, int v) {
    if (v < 1 || v > kMaxAntennas) {
      out.push_back(std::string("antennas.") + name + " must be in [1, " +
                    std::to_string(kMaxAntennas) + "]");
    }
  };
  antenna_ok("source", antennas.source);
  antenna_ok("dest", antennas.dest);
  if (kind == ScenarioKind::SingleRelayFD || kind == ScenarioKind::SingleRelayHD) {
    antenna_ok("relay", antennas.relay);
  }
  if ((kind == ScenarioKind::Marc || kind == ScenarioKind::TwoRelay) &&
      (antennas.source != 1 || antennas.relay != 1 || antennas.dest != 1)) {
    out.push_back(std::string("antennas: ") + to_string(kind) + " is single-antenna");
  }

  if (half_duplex()) {
    if (!listen_fraction) {
      out.push_back("listen_fraction: required for half-duplex scenarios");
    } else if (!(*listen_fraction >= 0.0 && *listen_fraction <= 1.0)) {
      out.push_back("listen_fraction: must be in [0, 1]");
    }
  } else if (listen_fraction) {
    out.push_back("listen_fraction: only valid for half-duplex scenarios");
  }

  if (power_split.size() != expected_split_size(kind)) {
    out.push_back("power_split: expected " + std::to_string(expected_split_size(kind)) +
                  " entries");
  }
  double sum = 0.0;
  bool negative = false;
  for (double p : power_split) {
    if (!(p >= 0.0) || !std::isfinite(p)) negative = true;
    sum += p;
  }
  if (negative) out.push_back("power_split: entries must be finite and >= 0");
  if (!power_split.empty() && std::abs(sum - 1.0) > 1e-12) {
    out.push_back("power_split: entries must sum to 1");
  }

  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) out.push_back("sigma2: must be > 0");

  const auto present = links();
  for (const auto& [link, z] : zones) {
    if (std::find(present.begin(), present.end(), link) == present.end()) {
      out.push_back(std::string("zones.") + to_string(link) + ": link not in this scenario");
    }
    if (z.awgn && (!(z.gain > 0.0) || !std::isfinite(z.gain))) {
      out.push_back(std::string("zones.") + to_string(link) + ": gain must be finite and > 0");
    }
  }
  return out;
}

void ScenarioSpec::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::ostringstream msg;
  msg << "invalid scenario:";
  for (const auto& s : v) msg << "\n  " << s;
  throw std::invalid_argument(msg.str());
}

std::string ScenarioSpec::label() const {
  std::ostringstream out;
  out << to_string(kind);
  if (kind == ScenarioKind::SingleRelayFD || kind == ScenarioKind::SingleRelayHD) {
    out << '_' << antennas.source << antennas.dest << antennas.relay;
  } else if (kind == ScenarioKind::Direct) {
    out << '_' << antennas.source << 'x' << antennas.dest;
  }
  bool clustered = false;
  for (const auto& entry : zones) clustered = clustered || entry.second.awgn;
  if (clustered) out << "_clustered";
  if (listen_fraction) out << "_t" << *listen_fraction;
  return out.str();
}

ScenarioSpec direct_scenario(int m, int n) {
  ScenarioSpec s;
  s.kind = ScenarioKind::Direct;
  s.antennas = {m, 1, n};
  s.power_split = {1.0};
  return s;
}

ScenarioSpec single_relay_fd(int m, int n, int k, std::vector<double> split) {
  ScenarioSpec s;
  s.kind = ScenarioKind::SingleRelayFD;
  s.antennas = {m, k, n};
  s.power_split = std::move(split);
  return s;
}

ScenarioSpec single_relay_hd(int m, int n, int k, double t, std::vector<double> split) {
  ScenarioSpec s = single_relay_fd(m, n, k, std::move(split));
  s.kind = ScenarioKind::SingleRelayHD;
  s.listen_fraction = t;
  return s;
}

ScenarioSpec marc_scenario(double t, std::vector<double> split) {
  ScenarioSpec s;
  s.kind = ScenarioKind::Marc;
  s.listen_fraction = t;
  s.power_split = std::move(split);
  return s;
}

ScenarioSpec two_relay_scenario(bool clustered, std::vector<double> split, double g) {
  ScenarioSpec s;
  s.kind = ScenarioKind::TwoRelay;
  s.power_split = std::move(split);
  if (clustered) {
    s.zones[LinkId::SR1] = LinkZone::awgn_zone(g);
    s.zones[LinkId::R2D] = LinkZone::awgn_zone(g);
  }
  return s;
}

ChannelDraw sample_channels(const ScenarioSpec& spec, std::uint64_t seed,
                            std::uint64_t sample_index) {
  ChannelDraw draw;
  const double sigma = std::sqrt(spec.sigma2);
  const PhiloxKey key{seed, kChannelKey};
  for (LinkId link : spec.links()) {
    const auto [rows, cols] = spec.link_shape(link);
    CMatrix& h = draw[link];
    h.resize(rows, cols);
    const LinkZone z = spec.zone(link);
    if (z.awgn) {
      h.setConstant(std::complex<double>(std::sqrt(z.gain), 0.0));
      continue;
    }
    PhiloxCounter block{};
    const int entries = rows * cols;
    for (int e = 0; e < entries; ++e) {
      // Two complex entries per Philox block, column-major order.
      if (e % 2 == 0) {
        block = philox4x64_10({sample_index, static_cast<std::uint64_t>(link),
                               static_cast<std::uint64_t>(e / 2), 0},
                              key);
      }
      const std::uint64_t a = block[2 * (e % 2)];
      const std::uint64_t b = block[2 * (e % 2) + 1];
      const double rad = sigma * std::sqrt(-2.0 * std::log(u64_to_open_unit(a)));
      const double ang = 2.0 * std::numbers::pi * u64_to_open_unit(b);
      h(e % rows, e / rows) = std::complex<double>(rad * std::cos(ang), rad * std::sin(ang));
    }
  }
  return draw;
}

PowerAllocation power_allocation(const ScenarioSpec& spec, double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw std::invalid_argument("power_allocation: snr must be positive");
  }
  PowerAllocation p;
  p.total = snr;
  for (double f : spec.power_split) p.powers.push_back(f * snr);
  return p;
}

double target_rate(double r, double snr) {
  if (!(snr > 1.0)) throw std::invalid_argument("target_rate: snr must exceed 1");
  if (!(r >= 0.0)) throw std::invalid_argument("target_rate: r must be >= 0");
  return r * std::log2(snr);
}

}  // namespace relaydmt
