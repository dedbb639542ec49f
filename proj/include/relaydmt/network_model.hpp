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

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relaydmt {

// Nodes carry at most 4 antennas, so stacked matrices never exceed 8 x 8 and
// everything stays on the stack.
inline constexpr int kMaxAntennas = 4;
using CMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0,
                              2 * kMaxAntennas, 2 * kMaxAntennas>;

enum class ScenarioKind { SingleRelayFD, SingleRelayHD, Marc, TwoRelay, Direct };

enum class LinkId : int { SR, SD, RD, S1R, S2R, S1D, S2D, SR1, SR2, R1R2, R1D, R2D };
inline constexpr int kLinkCount = 12;

const char* to_string(ScenarioKind kind);
const char* to_string(LinkId link);
std::optional<ScenarioKind> parse_scenario_kind(const std::string& s);
std::optional<LinkId> parse_link(const std::string& s);

/// Rayleigh zone (random i.i.d. entries) or AWGN zone (every entry sqrt(G)).
struct LinkZone {
  bool awgn = false;
  double gain = 0.0;

  static LinkZone rayleigh() { return {}; }
  static LinkZone awgn_zone(double g) { return {true, g}; }
};

// Unused fields are ignored by kinds that do not have the node.
struct Antennas {
  int source = 1;
  int relay = 1;
  int dest = 1;
};

/// One network problem. Power split order per kind:
///   Direct: (S); single relay: (S, R); Marc: (S1, S2, R); TwoRelay: (S, R1, R2).
/// Marc and TwoRelay are single-antenna.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Direct;
  Antennas antennas;
  std::map<LinkId, LinkZone> zones;  // links not listed are Rayleigh
  std::optional<double> listen_fraction;
  std::vector<double> power_split{1.0};
  double sigma2 = 0.5;  // per real/imaginary part

  std::vector<std::string> violations() const;
  void validate() const;  // throws std::invalid_argument listing all violations

  std::vector<LinkId> links() const;
  // (rows, cols) = (receive antennas, transmit antennas).
  std::pair<int, int> link_shape(LinkId link) const;
  LinkZone zone(LinkId link) const;
  bool half_duplex() const;
  std::string label() const;  // short id used in CSV output
};

ScenarioSpec direct_scenario(int m, int n);
ScenarioSpec single_relay_fd(int m, int n, int k, std::vector<double> split = {0.5, 0.5});
ScenarioSpec single_relay_hd(int m, int n, int k, double t,
                             std::vector<double> split = {0.5, 0.5});
ScenarioSpec marc_scenario(double t, std::vector<double> split = {1.0 / 3, 1.0 / 3, 1.0 / 3});
// Clustered: S-R1 and R2-D in AWGN zones with gain g.
ScenarioSpec two_relay_scenario(bool clustered, std::vector<double> split = {1.0 / 3, 1.0 / 3,
                                                                              1.0 / 3},
                                double g = 10.0);

/// One joint realization of every link in a scenario.
struct ChannelDraw {
  std::array<CMatrix, kLinkCount> matrices;

  CMatrix& operator[](LinkId l) { return matrices[static_cast<int>(l)]; }
  const CMatrix& operator[](LinkId l) const { return matrices[static_cast<int>(l)]; }
};

/// Deterministic in (spec, seed, sample_index). Rayleigh link L uses Philox
/// counters (sample_index, L, block, 0), so neither clustering flags nor the
/// thread schedule move any stream.
ChannelDraw sample_channels(const ScenarioSpec& spec, std::uint64_t seed,
                            std::uint64_t sample_index);

/// Per-transmitter powers, in the power_split order of the scenario.
struct PowerAllocation {
  std::vector<double> powers;
  double total = 0.0;

  double operator[](std::size_t i) const { return powers.at(i); }
};

PowerAllocation power_allocation(const ScenarioSpec& spec, double snr);

/// r log2(snr) bits.
double target_rate(double r, double snr);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace relaydmt
