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

// Monte Carlo outage estimation. Every draw is a pure function of
// (seed, sample index), and workers only add integers, so results do not
// depend on the thread count.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "relaydmt/network_model.hpp"

namespace relaydmt {

enum class Protocol {
  DF,
  CF,
  DDF,
  TwoRelayDF,
  TwoRelayMixed,
  MarcCF_TS,
  MarcCF_SIM,
  Direct,
  CutsetOracle,
};

const char* to_string(Protocol p);
std::optional<Protocol> parse_protocol(const std::string& s);

/// Empty when the protocol can run on the scenario, else the reason.
std::optional<std::string> protocol_mismatch(const ScenarioSpec& spec, Protocol p);

struct OutageEstimate {
  double snr = 0.0;
  double target_rate = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t outages = 0;
  std::uint64_t solver_failures = 0;  // already counted in outages
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  double snr_db() const;
};

struct SampleOutcome {
  bool outage = false;
  bool solver_failure = false;
  double rate = 0.0;  // the rate compared with the target
};

/// Outage at a target in bits for draw `index`. MARC targets are the sum
/// rate.
SampleOutcome evaluate_sample(const ScenarioSpec& spec, Protocol protocol, double target_bits,
                              const PowerAllocation& power, std::uint64_t seed,
                              std::uint64_t index);

/// Target r log2(snr). workers = 0 picks the hardware concurrency.
OutageEstimate estimate_outage(const ScenarioSpec& spec, Protocol protocol, double r, double snr,
                               std::uint64_t samples, std::uint64_t seed, unsigned workers = 0);

/// Same with a fixed target in bits.
OutageEstimate estimate_outage_at_rate(const ScenarioSpec& spec, Protocol protocol,
                                       double target_bits, double snr, std::uint64_t samples,
                                       std::uint64_t seed, unsigned workers = 0);

/// Seed of point i in a sweep; splitmix64 of (seed, i).
std::uint64_t point_seed(std::uint64_t seed, std::size_t index);

std::vector<OutageEstimate> sweep(const ScenarioSpec& spec, Protocol protocol, double r,
                                  const std::vector<double>& snr_list_db, std::uint64_t samples,
                                  std::uint64_t seed, unsigned workers = 0);

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z = 1.959963984540054);

struct SlopeFit {
  double slope = 0.0;  // diversity, reported positive
  double intercept = 0.0;
  std::pair<double, double> snr_window_db{0.0, 0.0};
  int points_used = 0;
};

inline constexpr std::uint64_t kMinOutagesForFit = 20;

/// Least squares of log10 p_hat against log10 snr over points inside the
/// window with at least kMinOutagesForFit outages. Throws std::runtime_error
/// with fewer than 3 such points.
SlopeFit fit_slope(const std::vector<OutageEstimate>& estimates, double lo_db, double hi_db);

void write_outage_header(std::ostream& out);
void write_outage_rows(std::ostream& out, Protocol protocol, const std::string& scenario, double r,
                       const std::vector<OutageEstimate>& estimates);

}  // namespace relaydmt
