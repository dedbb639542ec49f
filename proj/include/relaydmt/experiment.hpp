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

// Experiment runner: one validated config in, CSV files out.
//
// Every output file starts with "# key=value" metadata lines followed by a
// plain CSV table. Identical configs give byte-identical files.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relaydmt/dmt_curve.hpp"
#include "relaydmt/mc_outage.hpp"
#include "relaydmt/network_model.hpp"

namespace relaydmt {

enum class JobKind { Dmt, Outage, Sweep, Exponent, Figure };

const char* to_string(JobKind j);
std::optional<JobKind> parse_job_kind(const std::string& s);

/// Exit codes of run() and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSolverFailures = 3;

struct ExperimentConfig {
  JobKind job = JobKind::Outage;

  // outage, sweep, exponent. Exponent reads n = dest, k = relay and
  // t = listen_fraction from a single-antenna-source half-duplex scenario.
  std::optional<ScenarioSpec> scenario;
  std::string protocol = "CF";
  std::vector<double> r{0.5};
  std::vector<double> snr_db{20.0};
  std::int64_t samples = 100000;  // signed so a negative value can be reported
  std::uint64_t seed = 1;
  unsigned workers = 0;
  double max_solver_failure_fraction = 0.01;

  // dmt
  std::string curve = "fd_upper";
  Antennas antennas{.source = 2, .relay = 1, .dest = 2};

  // figure; an empty snr_db_override keeps the figure's own axis
  std::string figure;
  std::vector<double> snr_db_override;

  std::string output = "out";
};

/// Every violated field, without computing anything.
std::vector<std::string> validate(const ExperimentConfig& config);

struct ConfigParse {
  ExperimentConfig config;
  std::vector<std::string> errors;  // malformed or unknown fields
};

/// JSON config, see README for the schema.
ConfigParse parse_config_text(const std::string& json_text);
ConfigParse load_config_file(const std::string& path);

// ---- figures ---------------------------------------------------------------

struct NamedCurve {
  std::string name;
  DmtCurve curve;
};

struct McSeries {
  std::string name;
  ScenarioSpec scenario;
  Protocol protocol;
  double r;
};

struct ExponentSeries {
  int n;
  int k;
  double t;
};

struct FigureSetup {
  std::string name;
  std::string title;
  std::vector<NamedCurve> curves;
  std::vector<McSeries> series;
  std::vector<ExponentSeries> exponents;  // source-cut exponent against r
  std::vector<double> snr_db;
  std::pair<double, double> fit_window_db{30.0, 40.0};
};

const std::vector<std::string>& figure_names();
std::optional<FigureSetup> figure_setup(const std::string& name);

/// Names accepted by the dmt job.
const std::vector<std::string>& curve_names();

// ---- running ---------------------------------------------------------------

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> violations;
  std::vector<std::string> files;
  std::uint64_t samples = 0;
  std::uint64_t solver_failures = 0;
};

/// Validates, then computes and writes into config.output (a directory).
RunResult run(const ExperimentConfig& config);

}  // namespace relaydmt
