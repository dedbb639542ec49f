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

#include "relaydmt/mc_outage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "relaydmt/info_calc.hpp"

namespace relaydmt {
namespace {

constexpr std::array<std::pair<Protocol, const char*>, 9> kNames{{
    {Protocol::DF, "DF"},
    {Protocol::CF, "CF"},
    {Protocol::DDF, "DDF"},
    {Protocol::TwoRelayDF, "TwoRelayDF"},
    {Protocol::TwoRelayMixed, "TwoRelayMixed"},
    {Protocol::MarcCF_TS, "MarcCF_TS"},
    {Protocol::MarcCF_SIM, "MarcCF_SIM"},
    {Protocol::Direct, "Direct"},
    {Protocol::CutsetOracle, "CutsetOracle"},
}};

constexpr double kDefaultMarcT = 0.5;

double listen(const ScenarioSpec& spec, double fallback) {
  return spec.listen_fraction.value_or(fallback);
}

SampleOutcome from_solve(double rate, const CompressionSolve& s, double target) {
  SampleOutcome o;
  o.rate = rate;
  o.solver_failure = !s.converged;
  o.outage = o.solver_failure || rate < target;
  return o;
}

SampleOutcome from_rate(double rate, double target) { return {rate < target, false, rate}; }

SampleOutcome cutset_outcome(const ScenarioSpec& spec, const ChannelDraw& d,
                             const PowerAllocation& p, double target) {
  switch (spec.kind) {
    case ScenarioKind::Direct:
      return from_rate(log_det_capacity(d[LinkId::SD], p[0] / spec.antennas.source), target);
    case ScenarioKind::SingleRelayFD:
    case ScenarioKind::SingleRelayHD:
      return from_rate(fd_cutset_same_covariance(d, p).min(), target);
    case ScenarioKind::Marc: {
      const MarcCutset c = marc_cutset_same_covariance(d, p);
      SampleOutcome o{false, false, c.sum};
      o.outage = c.user1 < target / 2 || c.user2 < target / 2 || c.sum < target;
      return o;
    }
    case ScenarioKind::TwoRelay:
      return from_rate(two_relay_cutset_same_covariance(d, p).min(), target);
  }
  return {};
}

void check_point(double snr, std::uint64_t samples) {
  if (!(snr > 1.0)) throw std::invalid_argument("estimate_outage: snr must be > 1");
  if (samples < 1) throw std::invalid_argument("estimate_outage: samples must be >= 1");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const char* to_string(Protocol p) {
  for (const auto& [k, name] : kNames) {
    if (k == p) return name;
  }
  return "?";
}

std::optional<Protocol> parse_protocol(const std::string& s) {
  for (const auto& [k, name] : kNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

std::optional<std::string> protocol_mismatch(const ScenarioSpec& spec, Protocol p) {
  const ScenarioKind k = spec.kind;
  bool ok = false;
  switch (p) {
    case Protocol::DF:
      ok = k == ScenarioKind::SingleRelayFD;
      break;
    case Protocol::CF:
      ok = k == ScenarioKind::SingleRelayFD || k == ScenarioKind::SingleRelayHD;
      break;
    case Protocol::DDF:
      ok = k == ScenarioKind::SingleRelayHD;
      break;
    case Protocol::TwoRelayDF:
    case Protocol::TwoRelayMixed:
      ok = k == ScenarioKind::TwoRelay;
      break;
    case Protocol::MarcCF_TS:
    case Protocol::MarcCF_SIM:
      ok = k == ScenarioKind::Marc;
      if (ok && p == Protocol::MarcCF_SIM) {
        const double t = listen(spec, kDefaultMarcT);
        if (!(t > 0.0 && t < 1.0)) return std::string("MarcCF_SIM needs listen_fraction in (0, 1)");
      }
      break;
    case Protocol::Direct:
      ok = k == ScenarioKind::Direct;
      break;
    case Protocol::CutsetOracle:
      ok = true;
      break;
  }
  if (ok) return std::nullopt;
  return std::string(to_string(p)) + " does not apply to scenario kind " + to_string(k);
}

double OutageEstimate::snr_db() const { return 10.0 * std::log10(snr); }

SampleOutcome evaluate_sample(const ScenarioSpec& spec, Protocol protocol, double target,
                              const PowerAllocation& p, std::uint64_t seed, std::uint64_t index) {
  const ChannelDraw d = sample_channels(spec, seed, index);
  switch (protocol) {
    case Protocol::DF:
      return from_rate(df_rate(fd_df_rates(d, p), target), target);
    case Protocol::CF: {
      const RateSolve s = spec.kind == ScenarioKind::SingleRelayHD
                              ? hd_cf_rate(d, p, listen(spec, 0.5))
                              : fd_cf_rate(d, p);
      return from_solve(s.rate, s.solve, target);
    }
    case Protocol::DDF:
      return from_rate(ddf_rate(d, p, target).rate, target);
    case Protocol::TwoRelayDF:
      return from_rate(two_relay_df_rate(two_relay_df_quantities(d, p), target), target);
    case Protocol::TwoRelayMixed: {
      const MixedRate m = two_relay_mixed_rate(d, p, target);
      return from_solve(m.rate, m.solve, target);
    }
    case Protocol::MarcCF_TS: {
      // Each user owns the relay half the time, so it needs the full sum
      // target while active.
      const double t = listen(spec, kDefaultMarcT);
      const RateSolve u1 = marc_ts_user_rate(d, p, 1, t);
      const RateSolve u2 = marc_ts_user_rate(d, p, 2, t);
      SampleOutcome o;
      o.rate = 0.5 * (u1.rate + u2.rate);
      o.solver_failure = !u1.solve.converged || !u2.solve.converged;
      o.outage = o.solver_failure || u1.rate < target || u2.rate < target;
      return o;
    }
    case Protocol::MarcCF_SIM: {
      const MarcRates m = marc_cf_rates(d, p, listen(spec, kDefaultMarcT));
      SampleOutcome o;
      o.rate = m.rsum;
      o.solver_failure = !m.solve.converged;
      o.outage = o.solver_failure || m.r1 < target / 2 || m.r2 < target / 2 || m.rsum < target;
      return o;
    }
    case Protocol::Direct:
      return from_rate(log_det_capacity(d[LinkId::SD], p[0] / spec.antennas.source), target);
    case Protocol::CutsetOracle:
      return cutset_outcome(spec, d, p, target);
  }
  return {};
}

OutageEstimate estimate_outage_at_rate(const ScenarioSpec& spec, Protocol protocol,
                                       double target_bits, double snr, std::uint64_t samples,
                                       std::uint64_t seed, unsigned workers) {
  spec.validate();
  if (auto why = protocol_mismatch(spec, protocol)) throw std::invalid_argument(*why);
  check_point(snr, samples);
  const PowerAllocation power = power_allocation(spec, snr);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, samples));
  std::vector<std::uint64_t> outages(workers, 0);
  std::vector<std::uint64_t> failures(workers, 0);
  auto run = [&](unsigned w) {
    const std::uint64_t lo = samples * w / workers;
    const std::uint64_t hi = samples * (w + 1) / workers;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const SampleOutcome o = evaluate_sample(spec, protocol, target_bits, power, seed, i);
      outages[w] += o.outage;
      failures[w] += o.solver_failure;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  OutageEstimate e;
  e.snr = snr;
  e.target_rate = target_bits;
  e.samples = samples;
  for (unsigned w = 0; w < workers; ++w) {
    e.outages += outages[w];
    e.solver_failures += failures[w];
  }
  e.p_hat = static_cast<double>(e.outages) / static_cast<double>(samples);
  std::tie(e.ci_low, e.ci_high) = wilson_interval(e.outages, samples);
  return e;
}

OutageEstimate estimate_outage(const ScenarioSpec& spec, Protocol protocol, double r, double snr,
                               std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (!(r >= 0.0)) throw std::invalid_argument("estimate_outage: r must be >= 0");
  check_point(snr, samples);
  return estimate_outage_at_rate(spec, protocol, target_rate(r, snr), snr, samples, seed, workers);
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<OutageEstimate> sweep(const ScenarioSpec& spec, Protocol protocol, double r,
                                  const std::vector<double>& snr_list_db, std::uint64_t samples,
                                  std::uint64_t seed, unsigned workers) {
  for (std::size_t i = 1; i < snr_list_db.size(); ++i) {
    if (!(snr_list_db[i] > snr_list_db[i - 1])) {
      throw std::invalid_argument("sweep: snr list must be increasing");
    }
  }
  std::vector<OutageEstimate> out;
  out.reserve(snr_list_db.size());
  for (std::size_t i = 0; i < snr_list_db.size(); ++i) {
    out.push_back(estimate_outage(spec, protocol, r, db_to_linear(snr_list_db[i]), samples,
                                  point_seed(seed, i), workers));
  }
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains p_hat despite rounding.
  return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

SlopeFit fit_slope(const std::vector<OutageEstimate>& estimates, double lo_db, double hi_db) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& e : estimates) {
    const double db = e.snr_db();
    if (db < lo_db - 1e-9 || db > hi_db + 1e-9) continue;
    if (e.outages < kMinOutagesForFit || e.p_hat <= 0.0) continue;
    xs.push_back(std::log10(e.snr));
    ys.push_back(std::log10(e.p_hat));
  }
  if (xs.size() < 3) {
    throw std::runtime_error("fit_slope: fewer than 3 points with >= 20 outages in the window");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx <= 0.0) throw std::runtime_error("fit_slope: points share one snr");
  const double b = sxy / sxx;
  SlopeFit f;
  f.slope = -b;
  f.intercept = my - b * mx;
  f.snr_window_db = {lo_db, hi_db};
  f.points_used = static_cast<int>(xs.size());
  return f;
}

void write_outage_header(std::ostream& out) {
  out << "protocol,scenario,r,snr_db,samples,outages,p_hat,ci_low,ci_high\n";
}

void write_outage_rows(std::ostream& out, Protocol protocol, const std::string& scenario, double r,
                       const std::vector<OutageEstimate>& estimates) {
  for (const auto& e : estimates) {
    out << to_string(protocol) << ',' << scenario << ',' << fmt(r) << ',' << fmt(e.snr_db()) << ','
        << e.samples << ',' << e.outages << ',' << fmt(e.p_hat) << ',' << fmt(e.ci_low) << ','
        << fmt(e.ci_high) << '\n';
  }
}

}  // namespace relaydmt
