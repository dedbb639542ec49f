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

#include "relaydmt/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "relaydmt/analytic.hpp"
#include "relaydmt/exponent.hpp"

namespace relaydmt {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

using Meta = std::vector<std::pair<std::string, std::string>>;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

std::vector<double> db_range(double lo, double hi, double step) {
  std::vector<double> out;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) out.push_back(lo + i * step);
  return out;
}

void write_meta(std::ostream& os, const Meta& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

std::string write_file(const ExperimentConfig& cfg, const std::string& name, const Meta& meta,
                       const std::string& body) {
  fs::create_directories(cfg.output);
  const fs::path path = fs::path(cfg.output) / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_meta(os, meta);
  os << body;
  return path.string();
}

std::string scenario_meta(const ScenarioSpec& s) {
  std::ostringstream os;
  os << s.label() << " split=" << join(s.power_split) << " sigma2=" << num(s.sigma2);
  for (const auto& [link, zone] : s.zones) {
    if (zone.awgn) os << ' ' << to_string(link) << "_gain=" << num(zone.gain);
  }
  return os.str();
}

Meta base_meta(const ExperimentConfig& cfg) {
  Meta m{{"job", to_string(cfg.job)}, {"seed", std::to_string(cfg.seed)}};
  if (cfg.job != JobKind::Dmt && cfg.job != JobKind::Exponent) {
    m.emplace_back("samples", std::to_string(cfg.samples));
  }
  return m;
}

// ---- curves ------------------------------------------------------------

std::string curves_body(const std::vector<NamedCurve>& curves) {
  std::string body = "curve,r,d\n";
  for (const auto& nc : curves) {
    std::istringstream rows(curve_csv(nc.curve, 201, false));
    for (std::string line; std::getline(rows, line);) body += nc.name + ',' + line + '\n';
  }
  return body;
}

bool needs_three(const std::string& name) {
  return name == "fd_upper" || name == "fd_df" || name == "clustered_upper" ||
         name == "clustered_df" || name == "hd_static";
}

std::vector<NamedCurve> dmt_job_curves(const std::string& name, const Antennas& a) {
  const int m = a.source;
  const int n = a.dest;
  const int k = a.relay;
  if (name == "mimo") return {{"mimo", mimo_dmt(m, n)}};
  if (name == "fd_upper") return {{name, fd_relay_upper(m, n, k)}};
  if (name == "fd_df") return {{name, fd_df_dmt(m, n, k)}};
  if (name == "clustered_upper") return {{name, clustered_upper(m, n, k)}};
  if (name == "clustered_df") return {{name, clustered_df_dmt(m, n, k)}};
  if (name == "ddf_111") return {{name, ddf_dmt_111()}};
  if (name == "two_relay") return {{name, two_relay_curve(false)}};
  if (name == "two_relay_clustered") return {{name, two_relay_curve(true)}};
  if (name == "marc") {
    const MarcCurves c = marc_curves();
    return {{"marc_upper", c.upper}, {"marc_cf", c.cf}, {"marc_ddf_lower", c.ddf_lower},
            {"marc_maf", c.maf}};
  }
  return {};
}

// ---- exponent table ----------------------------------------------------

std::string exponent_rows(int n, int k, double t, const std::vector<double>& rs) {
  std::string body;
  for (double r : rs) {
    const ExponentResult e = region_exponent(n, k, r, t);
    const ExponentResult g = grid_oracle(n, k, r, t, 0.01);
    body += num(n) + ',' + num(k) + ',' + num(t) + ',' + num(r) + ',' + num(e.g_star) + ',' +
            e.region + ',' + num(e.argmin.front()) + ',' + num(e.argmin.back()) + ',' +
            num(g.g_star) + '\n';
  }
  return body;
}

constexpr const char* kExponentHeader = "n,k,t,r,g_star,region,alpha_direct,alpha_relay,grid\n";

std::vector<double> unit_r_grid() {
  std::vector<double> rs;
  for (int i = 0; i <= 100; ++i) rs.push_back(i / 100.0);
  return rs;
}

// ---- MC bookkeeping ----------------------------------------------------

struct McTally {
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;

  void add(const std::vector<OutageEstimate>& es) {
    for (const auto& e : es) {
      samples += e.samples;
      failures += e.solver_failures;
    }
  }
};

std::string slope_row(const std::string& name, Protocol p, double r,
                      const std::vector<OutageEstimate>& es, double lo, double hi) {
  std::string row = name + ',' + to_string(p) + ',' + num(r) + ',' + num(lo) + ',' + num(hi) + ',';
  try {
    const SlopeFit f = fit_slope(es, lo, hi);
    row += num(f.slope) + ',' + std::to_string(f.points_used);
  } catch (const std::runtime_error&) {
    row += "nan,0";
  }
  return row + '\n';
}

constexpr const char* kSlopeHeader = "series,protocol,r,lo_db,hi_db,slope,points\n";

void check_increasing(const std::vector<double>& v, const std::string& field,
                      std::vector<std::string>& out) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      out.push_back(field + ": must be strictly increasing");
      return;
    }
  }
}

void check_snr(const std::vector<double>& v, const std::string& field,
               std::vector<std::string>& out) {
  for (double db : v) {
    if (!(db > 0.0)) {
      out.push_back(field + ": every entry must be > 0 dB (snr > 1)");
      return;
    }
  }
}

}  // namespace

const char* to_string(JobKind j) {
  switch (j) {
    case JobKind::Dmt: return "dmt";
    case JobKind::Outage: return "outage";
    case JobKind::Sweep: return "sweep";
    case JobKind::Exponent: return "exponent";
    case JobKind::Figure: return "figure";
  }
  return "?";
}

std::optional<JobKind> parse_job_kind(const std::string& s) {
  for (JobKind j : {JobKind::Dmt, JobKind::Outage, JobKind::Sweep, JobKind::Exponent,
                    JobKind::Figure}) {
    if (s == to_string(j)) return j;
  }
  return std::nullopt;
}

const std::vector<std::string>& curve_names() {
  static const std::vector<std::string> names{
      "mimo",    "fd_upper",  "fd_df",    "clustered_upper",     "clustered_df",
      "ddf_111", "hd_static", "two_relay", "two_relay_clustered", "marc"};
  return names;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig3", "fig4", "fig5",  "fig6", "fig7",
                                              "fig9", "fig10", "fig12", "fig13"};
  return names;
}

std::optional<FigureSetup> figure_setup(const std::string& name) {
  const std::vector<double> fd_split{2.0 / 3, 1.0 / 3};  // P_S = 2 P_R
  FigureSetup f;
  f.name = name;
  if (name == "fig3" || name == "fig4") {
    const int k = name == "fig3" ? 1 : 2;
    f.title = "non-clustered (2,2," + std::to_string(k) + ") full-duplex DMT";
    f.curves = {{"upper", fd_relay_upper(2, 2, k)}, {"df", fd_df_dmt(2, 2, k)},
                {"direct", mimo_dmt(2, 2)}};
  } else if (name == "fig5") {
    f.title = "(2,2,1) full-duplex outage, r = 1.5";
    f.curves = {{"mimo_3x2", mimo_dmt(3, 2)}, {"upper", fd_relay_upper(2, 2, 1)},
                {"df", fd_df_dmt(2, 2, 1)}};
    f.series = {{"df", single_relay_fd(2, 2, 1, fd_split), Protocol::DF, 1.5},
                {"cf", single_relay_fd(2, 2, 1, fd_split), Protocol::CF, 1.5},
                {"mimo_3x2", direct_scenario(3, 2), Protocol::Direct, 1.5}};
    f.snr_db = db_range(10, 40, 5);
  } else if (name == "fig6" || name == "fig7") {
    const int k = name == "fig6" ? 1 : 2;
    f.title = "(2,2," + std::to_string(k) + ") relay clustered with the source";
    f.curves = {{"upper", clustered_upper(2, 2, k)}, {"df", clustered_df_dmt(2, 2, k)},
                {"non_clustered_upper", fd_relay_upper(2, 2, k)}};
  } else if (name == "fig9") {
    f.title = "(1,1,2) half-duplex source-cut exponent";
    f.curves = {{"full_duplex", fd_relay_upper(1, 1, 2)}};
    f.exponents = {{1, 2, 0.25}, {1, 2, 0.5}, {1, 2, 0.75}};
  } else if (name == "fig10") {
    f.title = "(2,2,1) half-duplex outage, r = 1.5, t = 0.5";
    f.curves = {{"fd_upper", fd_relay_upper(2, 2, 1)}, {"direct", mimo_dmt(2, 2)}};
    f.series = {{"ddf", single_relay_hd(2, 2, 1, 0.5, fd_split), Protocol::DDF, 1.5},
                {"cf", single_relay_hd(2, 2, 1, 0.5, fd_split), Protocol::CF, 1.5}};
    f.snr_db = db_range(10, 40, 5);
  } else if (name == "fig12") {
    f.title = "single-antenna two-relay DMT";
    f.curves = {{"non_clustered", two_relay_curve(false)},
                {"clustered", two_relay_curve(true)},
                {"mimo_2x2", mimo_dmt(2, 2)}};
  } else if (name == "fig13") {
    f.title = "clustered two-relay outage, r = 1";
    // P_S = P_R1 = 10 P_R2; S-R1 and R2-D in AWGN zones with G = 10.
    const ScenarioSpec s = two_relay_scenario(true, {10.0 / 21, 10.0 / 21, 1.0 / 21}, 10.0);
    f.curves = {{"clustered", two_relay_curve(true)}, {"mimo_2x2", mimo_dmt(2, 2)}};
    f.series = {{"mixed", s, Protocol::TwoRelayMixed, 1.0},
                {"mimo_2x2", direct_scenario(2, 2), Protocol::Direct, 1.0}};
    f.snr_db = db_range(10, 40, 5);
  } else {
    return std::nullopt;
  }
  return f;
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> out;
  const bool mc = c.job == JobKind::Outage || c.job == JobKind::Sweep || c.job == JobKind::Figure;
  if (mc && c.samples < 1) out.push_back("samples: must be >= 1");
  if (!(c.max_solver_failure_fraction >= 0.0 && c.max_solver_failure_fraction <= 1.0)) {
    out.push_back("max_solver_failure_fraction: must be in [0, 1]");
  }
  if (c.output.empty()) out.push_back("output: must name a directory");

  switch (c.job) {
    case JobKind::Outage:
    case JobKind::Sweep: {
      if (!c.scenario) {
        out.push_back("scenario: required for " + std::string(to_string(c.job)) + " jobs");
      } else {
        for (const auto& v : c.scenario->violations()) out.push_back("scenario." + v);
      }
      const auto p = parse_protocol(c.protocol);
      if (!p) {
        out.push_back("protocol: unknown '" + c.protocol + "'");
      } else if (c.scenario && c.scenario->violations().empty()) {
        if (auto why = protocol_mismatch(*c.scenario, *p)) out.push_back("protocol: " + *why);
      }
      if (c.r.empty()) out.push_back("r: at least one value required");
      for (double r : c.r) {
        if (!(r >= 0.0)) {
          out.push_back("r: must be >= 0");
          break;
        }
      }
      if (c.snr_db.empty()) out.push_back("snr_db: at least one value required");
      check_snr(c.snr_db, "snr_db", out);
      if (c.job == JobKind::Sweep) check_increasing(c.snr_db, "snr_db", out);
      break;
    }
    case JobKind::Exponent: {
      if (!c.scenario) {
        out.push_back("scenario: required for exponent jobs");
        break;
      }
      for (const auto& v : c.scenario->violations()) out.push_back("scenario." + v);
      if (c.scenario->kind != ScenarioKind::SingleRelayHD) {
        out.push_back("scenario.kind: exponent jobs need single_relay_hd");
      }
      if (c.scenario->antennas.source != 1) out.push_back("scenario.antennas: source must be 1");
      const double t = c.scenario->listen_fraction.value_or(0.5);
      if (!(t > 0.0 && t < 1.0)) out.push_back("scenario.listen_fraction: must be in (0, 1)");
      if (c.r.empty()) out.push_back("r: at least one value required");
      for (double r : c.r) {
        if (!(r >= 0.0 && r <= 1.0)) {
          out.push_back("r: must be in [0, 1]");
          break;
        }
      }
      break;
    }
    case JobKind::Dmt: {
      bool known = false;
      for (const auto& n : curve_names()) known = known || n == c.curve;
      if (!known) out.push_back("curve: unknown '" + c.curve + "'");
      const Antennas& a = c.antennas;
      auto in_range = [](int v) { return v >= 1 && v <= kMaxAntennas; };
      if (!in_range(a.source) || !in_range(a.dest) || (needs_three(c.curve) && !in_range(a.relay))) {
        out.push_back("antennas: counts must be in [1, " + std::to_string(kMaxAntennas) + "]");
      }
      if (c.curve == "hd_static" && (a.source != 1 || a.dest != 1)) {
        out.push_back("antennas: hd_static needs a single-antenna source and destination");
      }
      if (c.scenario) out.push_back("scenario: not used by dmt jobs");
      break;
    }
    case JobKind::Figure: {
      const auto f = figure_setup(c.figure);
      if (!f) {
        out.push_back("figure: unknown '" + c.figure + "'");
        break;
      }
      check_snr(c.snr_db_override, "snr_db", out);
      check_increasing(c.snr_db_override, "snr_db", out);
      for (const auto& s : f->series) {
        for (const auto& v : s.scenario.violations()) out.push_back(s.name + ".scenario." + v);
        if (auto why = protocol_mismatch(s.scenario, s.protocol)) out.push_back(s.name + ": " + *why);
      }
      if (c.scenario) out.push_back("scenario: figure jobs use their built-in setup");
      break;
    }
  }
  return out;
}

// ---- JSON ---------------------------------------------------------------

namespace {

std::vector<double> number_list(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

Antennas antenna_triple(const json& v) {
  // [m, n, k] = (source, destination, relay), the usual (m, n, k) order.
  if (v.is_array()) {
    const auto a = v.get<std::vector<int>>();
    if (a.size() != 3) throw std::invalid_argument("expected [m, n, k]");
    return {a[0], a[2], a[1]};
  }
  Antennas a;
  for (const auto& [key, val] : v.items()) {
    if (key == "source") a.source = val.get<int>();
    else if (key == "relay") a.relay = val.get<int>();
    else if (key == "dest") a.dest = val.get<int>();
    else throw std::invalid_argument("unknown key '" + key + "'");
  }
  return a;
}

ScenarioSpec parse_scenario(const json& j, std::vector<std::string>& errors) {
  ScenarioSpec s;
  bool split_given = false;
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "kind") {
        const auto k = parse_scenario_kind(val.get<std::string>());
        if (!k) errors.push_back("scenario.kind: unknown '" + val.get<std::string>() + "'");
        else s.kind = *k;
      } else if (key == "antennas") {
        s.antennas = antenna_triple(val);
      } else if (key == "listen_fraction" || key == "t") {
        s.listen_fraction = val.get<double>();
      } else if (key == "power_split") {
        s.power_split = val.get<std::vector<double>>();
        split_given = true;
      } else if (key == "sigma2") {
        s.sigma2 = val.get<double>();
      } else if (key == "awgn") {
        for (const auto& [link, gain] : val.items()) {
          const auto l = parse_link(link);
          if (!l) errors.push_back("scenario.awgn: unknown link '" + link + "'");
          else s.zones[*l] = LinkZone::awgn_zone(gain.get<double>());
        }
      } else {
        errors.push_back("scenario." + key + ": unknown field");
      }
    } catch (const std::exception& e) {
      errors.push_back("scenario." + key + ": " + e.what());
    }
  }
  if (!split_given) {
    // Equal split over the transmitters of the kind.
    const std::size_t tx = s.kind == ScenarioKind::Direct ? 1
                           : (s.kind == ScenarioKind::Marc || s.kind == ScenarioKind::TwoRelay) ? 3
                                                                                                 : 2;
    s.power_split.assign(tx, 1.0 / static_cast<double>(tx));
  }
  return s;
}

}  // namespace

ConfigParse parse_config_text(const std::string& text) {
  ConfigParse out;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    out.errors.push_back(std::string("config: ") + e.what());
    return out;
  }
  if (!j.is_object()) {
    out.errors.push_back("config: top level must be an object");
    return out;
  }
  ExperimentConfig& c = out.config;
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "job") {
        const auto k = parse_job_kind(val.get<std::string>());
        if (!k) out.errors.push_back("job: unknown '" + val.get<std::string>() + "'");
        else c.job = *k;
      } else if (key == "scenario") {
        c.scenario = parse_scenario(val, out.errors);
      } else if (key == "protocol") {
        c.protocol = val.get<std::string>();
      } else if (key == "r") {
        c.r = number_list(val);
      } else if (key == "snr_db") {
        c.snr_db = number_list(val);
        c.snr_db_override = c.snr_db;
      } else if (key == "samples") {
        c.samples = val.get<std::int64_t>();
      } else if (key == "seed") {
        c.seed = val.get<std::uint64_t>();
      } else if (key == "workers") {
        c.workers = val.get<unsigned>();
      } else if (key == "max_solver_failure_fraction") {
        c.max_solver_failure_fraction = val.get<double>();
      } else if (key == "curve") {
        c.curve = val.get<std::string>();
      } else if (key == "antennas") {
        c.antennas = antenna_triple(val);
      } else if (key == "figure") {
        c.figure = val.get<std::string>();
      } else if (key == "output") {
        c.output = val.get<std::string>();
      } else {
        out.errors.push_back(key + ": unknown field");
      }
    } catch (const std::exception& e) {
      out.errors.push_back(key + ": " + e.what());
    }
  }
  return out;
}

ConfigParse load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigParse p;
    p.errors.push_back("config: cannot read " + path);
    return p;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---- run -----------------------------------------------------------------

RunResult run(const ExperimentConfig& c) {
  RunResult res;
  res.violations = validate(c);
  if (!res.violations.empty()) {
    res.exit_code = kExitInvalid;
    return res;
  }
  McTally tally;
  Meta meta = base_meta(c);

  switch (c.job) {
    case JobKind::Dmt: {
      meta.emplace_back("curve", c.curve);
      if (c.curve == "mimo" || needs_three(c.curve)) {
        meta.emplace_back("antennas", std::to_string(c.antennas.source) + "," +
                                          std::to_string(c.antennas.dest) + "," +
                                          std::to_string(c.antennas.relay));
      }
      if (c.curve == "hd_static") {
        std::string body = "curve,r,d,t_star\n";
        for (double r : unit_r_grid()) {
          const HdStaticUpper u = hd_static_upper(1, 1, c.antennas.relay, r);
          body += "hd_static," + num(r) + ',' + num(u.d) + ',' + num(u.t_star) + '\n';
        }
        res.files.push_back(write_file(c, "dmt_hd_static.csv", meta, body));
        break;
      }
      const auto curves = dmt_job_curves(c.curve, c.antennas);
      for (const auto& nc : curves) {
        if (nc.curve.conjectured()) meta.emplace_back("conjectured", nc.name);
      }
      res.files.push_back(write_file(c, "dmt_" + c.curve + ".csv", meta, curves_body(curves)));
      std::string bp = "curve,r,left,value,right\n";
      for (const auto& nc : curves) {
        std::istringstream rows(breakpoints_csv(nc.curve));
        std::string line;
        std::getline(rows, line);  // its own header
        while (std::getline(rows, line)) bp += nc.name + ',' + line + '\n';
      }
      res.files.push_back(write_file(c, "dmt_" + c.curve + "_breakpoints.csv", meta, bp));
      break;
    }
    case JobKind::Exponent: {
      const ScenarioSpec& s = *c.scenario;
      const double t = s.listen_fraction.value_or(0.5);
      meta.emplace_back("grid_step", "0.01");
      res.files.push_back(write_file(
          c, "exponent.csv", meta,
          kExponentHeader + exponent_rows(s.antennas.dest, s.antennas.relay, t, c.r)));
      break;
    }
    case JobKind::Outage: {
      const ScenarioSpec& s = *c.scenario;
      const Protocol p = *parse_protocol(c.protocol);
      meta.emplace_back("scenario", scenario_meta(s));
      std::ostringstream body;
      write_outage_header(body);
      for (double r : c.r) {
        std::vector<OutageEstimate> es;
        for (double db : c.snr_db) {
          es.push_back(estimate_outage(s, p, r, db_to_linear(db), static_cast<std::uint64_t>(c.samples),
                                       c.seed, c.workers));
        }
        tally.add(es);
        write_outage_rows(body, p, s.label(), r, es);
      }
      res.files.push_back(write_file(c, "outage.csv", meta, body.str()));
      break;
    }
    case JobKind::Sweep: {
      const ScenarioSpec& s = *c.scenario;
      const Protocol p = *parse_protocol(c.protocol);
      meta.emplace_back("scenario", scenario_meta(s));
      std::ostringstream body;
      write_outage_header(body);
      std::string slopes = kSlopeHeader;
      for (double r : c.r) {
        const auto es = sweep(s, p, r, c.snr_db, static_cast<std::uint64_t>(c.samples), c.seed,
                              c.workers);
        tally.add(es);
        write_outage_rows(body, p, s.label(), r, es);
        slopes += slope_row(s.label(), p, r, es, c.snr_db.front(), c.snr_db.back());
      }
      res.files.push_back(write_file(c, "sweep.csv", meta, body.str()));
      res.files.push_back(write_file(c, "sweep_slopes.csv", meta, slopes));
      break;
    }
    case JobKind::Figure: {
      const FigureSetup f = *figure_setup(c.figure);
      meta.emplace_back("figure", f.name);
      meta.emplace_back("title", f.title);
      const std::vector<double> axis = c.snr_db_override.empty() ? f.snr_db : c.snr_db_override;
      for (std::size_t i = 0; i < f.series.size(); ++i) {
        const auto& s = f.series[i];
        meta.emplace_back("series_" + std::to_string(i),
                          s.name + " " + to_string(s.protocol) + " r=" + num(s.r) + " " +
                              scenario_meta(s.scenario));
      }
      res.files.push_back(write_file(c, f.name + "_curves.csv", meta, curves_body(f.curves)));
      if (!f.exponents.empty()) {
        std::string body = kExponentHeader;
        for (const auto& e : f.exponents) body += exponent_rows(e.n, e.k, e.t, unit_r_grid());
        res.files.push_back(write_file(c, f.name + "_exponent.csv", meta, body));
      }
      if (!f.series.empty()) {
        std::ostringstream body;
        write_outage_header(body);
        std::string slopes = kSlopeHeader;
        const double hi = axis.back();
        const double lo = std::max(axis.front(), hi - 10.0);
        for (const auto& s : f.series) {
          const auto es = sweep(s.scenario, s.protocol, s.r, axis,
                                static_cast<std::uint64_t>(c.samples), c.seed, c.workers);
          tally.add(es);
          write_outage_rows(body, s.protocol, s.scenario.label(), s.r, es);
          slopes += slope_row(s.name, s.protocol, s.r, es, lo, hi);
        }
        res.files.push_back(write_file(c, f.name + "_outage.csv", meta, body.str()));
        res.files.push_back(write_file(c, f.name + "_slopes.csv", meta, slopes));
      }
      break;
    }
  }

  res.samples = tally.samples;
  res.solver_failures = tally.failures;
  if (tally.samples > 0 &&
      static_cast<double>(tally.failures) > c.max_solver_failure_fraction * static_cast<double>(tally.samples)) {
    res.exit_code = kExitSolverFailures;
  }
  return res;
}

}  // namespace relaydmt
