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

// Command-line front end. Flags mirror the JSON config fields; when both are
// given, flags win.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaydmt/experiment.hpp"

using namespace relaydmt;

namespace {

struct Flags {
  std::string config;
  std::string kind;
  std::vector<int> antennas;
  double t = 0.5;
  std::vector<double> split;
  std::map<std::string, double> awgn;
  double sigma2 = 0.5;
  std::string protocol;
  std::vector<double> r;
  std::vector<double> snr_db;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  double max_failures = 0.01;
  std::string curve;
  bool marc = false;
  std::string figure;
  bool validate_only = false;
  std::string output;
};

struct Options {
  CLI::Option* kind = nullptr;
  CLI::Option* antennas = nullptr;
  CLI::Option* t = nullptr;
  CLI::Option* split = nullptr;
  CLI::Option* awgn = nullptr;
  CLI::Option* sigma2 = nullptr;
  CLI::Option* protocol = nullptr;
  CLI::Option* r = nullptr;
  CLI::Option* snr = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* max_failures = nullptr;
  CLI::Option* curve = nullptr;
  CLI::Option* output = nullptr;
};

void add_common(CLI::App* app, Flags& f, Options& o) {
  app->add_option("--config", f.config, "JSON config file");
  o.output = app->add_option("-o,--output", f.output, "output directory");
}

void add_mc(CLI::App* app, Flags& f, Options& o) {
  o.samples = app->add_option("--samples", f.samples, "Monte Carlo draws per point");
  o.seed = app->add_option("--seed", f.seed, "base seed");
  o.workers = app->add_option("--workers", f.workers, "threads, 0 = all cores");
  o.max_failures = app->add_option("--max-failure-fraction", f.max_failures,
                                   "solver-failure share that triggers exit code 3");
  o.snr = app->add_option("--snr-db", f.snr_db, "SNR points in dB")->delimiter(',');
}

void add_scenario(CLI::App* app, Flags& f, Options& o) {
  o.kind = app->add_option("--scenario", f.kind,
                           "single_relay_fd | single_relay_hd | marc | two_relay | direct");
  o.antennas = app->add_option("--antennas", f.antennas, "m,n,k")->delimiter(',')->expected(3);
  o.t = app->add_option("--t", f.t, "relay listen fraction (half-duplex only)");
  o.split = app->add_option("--split", f.split, "power split per transmitter")->delimiter(',');
  o.awgn = app->add_option("--awgn", f.awgn, "LINK=G, an AWGN zone with gain G");
  o.sigma2 = app->add_option("--sigma2", f.sigma2, "fading variance per real part");
}

Antennas triple(const std::vector<int>& a) { return {a[0], a[2], a[1]}; }

// The flags that were actually given override the config file.
int build(JobKind job, const Flags& f, const Options& o, ExperimentConfig& c) {
  if (!f.config.empty()) {
    const ConfigParse p = load_config_file(f.config);
    if (!p.errors.empty()) {
      for (const auto& e : p.errors) std::cerr << "config error: " << e << '\n';
      return kExitInvalid;
    }
    c = p.config;
  }
  c.job = job;
  auto given = [](const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };

  if (given(o.kind) || given(o.antennas) || given(o.t) || given(o.split) || given(o.awgn) ||
      given(o.sigma2)) {
    ScenarioSpec s = c.scenario.value_or(ScenarioSpec{});
    if (given(o.kind)) {
      const auto k = parse_scenario_kind(f.kind);
      if (!k) {
        std::cerr << "invalid: scenario: unknown '" << f.kind << "'\n";
        return kExitInvalid;
      }
      s.kind = *k;
      if (!given(o.split)) {
        const std::size_t tx = s.kind == ScenarioKind::Direct ? 1
                               : (s.kind == ScenarioKind::Marc || s.kind == ScenarioKind::TwoRelay)
                                   ? 3
                                   : 2;
        s.power_split.assign(tx, 1.0 / static_cast<double>(tx));
      }
    }
    if (given(o.antennas)) s.antennas = triple(f.antennas);
    if (given(o.t)) s.listen_fraction = f.t;
    if (given(o.split)) s.power_split = f.split;
    if (given(o.sigma2)) s.sigma2 = f.sigma2;
    for (const auto& [name, g] : f.awgn) {
      const auto l = parse_link(name);
      if (!l) {
        std::cerr << "invalid: awgn: unknown link '" << name << "'\n";
        return kExitInvalid;
      }
      s.zones[*l] = LinkZone::awgn_zone(g);
    }
    c.scenario = s;
  }
  if (given(o.protocol)) c.protocol = f.protocol;
  if (given(o.r)) c.r = f.r;
  if (given(o.snr)) {
    c.snr_db = f.snr_db;
    c.snr_db_override = f.snr_db;
  }
  if (given(o.samples)) c.samples = f.samples;
  if (given(o.seed)) c.seed = f.seed;
  if (given(o.workers)) c.workers = f.workers;
  if (given(o.max_failures)) c.max_solver_failure_fraction = f.max_failures;
  if (given(o.curve)) c.curve = f.curve;
  if (given(o.output)) c.output = f.output;
  return kExitOk;
}

int report(const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << "invalid: " << v << '\n';
  return violations.empty() ? kExitOk : kExitInvalid;
}

int execute(const ExperimentConfig& c) {
  const RunResult r = run(c);
  if (r.exit_code == kExitInvalid) return report(r.violations);
  for (const auto& file : r.files) std::cout << file << '\n';
  if (r.samples > 0) {
    std::cout << "solver failures: " << r.solver_failures << " of " << r.samples << " draws\n";
  }
  if (r.exit_code == kExitSolverFailures) {
    std::cerr << "warning: solver-failure fraction above " << c.max_solver_failure_fraction << '\n';
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DMT curves and outage simulation for relay networks"};
  app.require_subcommand(1);
  Flags f;

  Options dmt_o;
  auto* dmt = app.add_subcommand("dmt", "analytic DMT curves");
  add_common(dmt, f, dmt_o);
  dmt_o.curve = dmt->add_option("--curve", f.curve, "curve name");
  dmt->add_option("--antennas", f.antennas, "m,n,k")->delimiter(',')->expected(3);
  dmt->add_flag("--marc", f.marc, "the four MARC curves");

  std::map<CLI::App*, Options> mc_o;
  auto* outage = app.add_subcommand("outage", "outage probability at given points");
  auto* sweep_cmd = app.add_subcommand("sweep", "outage against SNR with a slope fit");
  for (auto* sub : {outage, sweep_cmd}) {
    Options& o = mc_o[sub];
    add_common(sub, f, o);
    add_scenario(sub, f, o);
    add_mc(sub, f, o);
    o.protocol = sub->add_option("--protocol", f.protocol, "protocol name");
    o.r = sub->add_option("--r", f.r, "multiplexing gains")->delimiter(',');
  }

  Options exp_o;
  auto* exponent = app.add_subcommand("exponent", "half-duplex source-cut SNR exponent");
  add_common(exponent, f, exp_o);
  add_scenario(exponent, f, exp_o);
  exp_o.r = exponent->add_option("--r", f.r, "multiplexing gains")->delimiter(',');

  Options fig_o;
  auto* figure = app.add_subcommand("figure", "reproduce a published figure setup");
  add_common(figure, f, fig_o);
  add_mc(figure, f, fig_o);
  figure->add_option("name", f.figure, "fig3 | fig4 | fig5 | fig6 | fig7 | fig9 | fig10 | fig12 | fig13")
      ->required();
  figure->add_flag("--validate-only", f.validate_only, "check the setup without computing");

  auto* validate_cmd = app.add_subcommand("validate", "report config violations");
  validate_cmd->add_option("--config", f.config, "JSON config file")->required();

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig c;
  if (*validate_cmd) {
    const ConfigParse p = load_config_file(f.config);
    const std::vector<std::string> all = p.errors.empty() ? validate(p.config) : p.errors;
    const int code = report(all);
    if (code == kExitOk) std::cout << "config is valid\n";
    return code;
  }
  if (*dmt) {
    // --antennas on dmt sets the curve's (m, n, k), not a scenario.
    if (build(JobKind::Dmt, f, dmt_o, c) != kExitOk) return kExitInvalid;
    if (!f.antennas.empty()) c.antennas = triple(f.antennas);
    if (f.marc) c.curve = "marc";
    return execute(c);
  }
  if (*exponent) {
    c.scenario = single_relay_hd(1, 1, 1, 0.5);
    if (build(JobKind::Exponent, f, exp_o, c) != kExitOk) return kExitInvalid;
    return execute(c);
  }
  if (*figure) {
    if (build(JobKind::Figure, f, fig_o, c) != kExitOk) return kExitInvalid;
    c.figure = f.figure;
    if (f.validate_only) {
      const int code = report(validate(c));
      if (code == kExitOk) std::cout << f.figure << ": setup is valid\n";
      return code;
    }
    return execute(c);
  }
  CLI::App* sub = *outage ? outage : sweep_cmd;
  if (build(*outage ? JobKind::Outage : JobKind::Sweep, f, mc_o[sub], c) != kExitOk) {
    return kExitInvalid;
  }
  return execute(c);
}
