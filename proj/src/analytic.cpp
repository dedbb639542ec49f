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

#include "relaydmt/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaydmt {
namespace {

void check_antennas(int m, int n, int k) {
  if (m < 1 || n < 1 || k < 1) throw std::invalid_argument("antenna counts must be >= 1");
}

// n + k - k r / t, n (1 - r) / (1 - t) or (n + k)(1 - r), by regime.
double cut_exponent(int n, int k, double r, double t) {
  if (r >= 1.0) return 0.0;
  const double nn = n;
  const double kk = k;
  if (t >= kk / (nn + kk)) return (nn + kk) * (1.0 - r);
  if (r <= t) return t > 0.0 ? nn + kk - kk * r / t : nn + kk;
  return nn * (1.0 - r) / (1.0 - t);
}

}  // namespace

DmtCurve fd_relay_upper(int m, int n, int k) {
  check_antennas(m, n, k);
  return min_curves(mimo_dmt(m, n + k), mimo_dmt(m + k, n));
}

DmtCurve fd_df_dmt(int m, int n, int k) {
  check_antennas(m, n, k);
  const int top = std::min({m, n, k});
  const int end = std::min(m, n);
  const DmtCurve joint = restrict_curve(mimo_dmt(m + k, n), 0, top);
  const DmtCurve split = restrict_curve(add_curves(mimo_dmt(m, n), mimo_dmt(m, k)), 0, top);
  const DmtCurve low = min_curves(joint, split);
  if (top == end) return low;
  return join_curves(low, restrict_curve(mimo_dmt(m, n), top, end), JumpValue::Left);
}

DmtCurve clustered_upper(int m, int n, int k) {
  check_antennas(m, n, k);
  const DmtCurve below = restrict_curve(mimo_dmt(m + k, n), 0, 1);
  const int end = std::min(m, n);
  DmtCurve out = below;
  if (end > 1) {
    const DmtCurve above = min_curves(restrict_curve(mimo_dmt(m, n + 1), 1, end),
                                      restrict_curve(mimo_dmt(m + k, n), 1, end));
    out = join_curves(below, above, JumpValue::Right);
  }
  return m > 2 ? out.as_conjectured() : out;
}

DmtCurve clustered_df_dmt(int m, int n, int k) {
  check_antennas(m, n, k);
  const DmtCurve below = restrict_curve(mimo_dmt(m + k, n), 0, 1);
  const int end = std::min(m, n);
  if (end == 1) return below;
  return join_curves(below, restrict_curve(mimo_dmt(m, n), 1, end), JumpValue::Right);
}

double hd_cutset_exponent(const HdExponentQuery& q) {
  if (q.n_or_m < 1 || q.k < 1) throw std::invalid_argument("hd_cutset_exponent: bad antennas");
  if (!(q.t >= 0.0 && q.t <= 1.0)) throw std::invalid_argument("hd_cutset_exponent: t in [0,1]");
  if (!(q.r >= 0.0)) throw std::invalid_argument("hd_cutset_exponent: r must be >= 0");
  const double t = q.side == CutSide::Source ? q.t : 1.0 - q.t;
  return cut_exponent(q.n_or_m, q.k, q.r, t);
}

HdStaticUpper hd_static_upper(int m, int n, int k, double r, double t_step) {
  check_antennas(m, n, k);
  if (m != 1 || n != 1) {
    throw std::invalid_argument(
        "hd_static_upper: closed form needs m = n = 1; estimate other cases by Monte Carlo");
  }
  if (!(t_step > 0.0 && t_step <= 0.1)) throw std::invalid_argument("hd_static_upper: bad step");
  auto objective = [&](double t) {
    return std::min(hd_cutset_exponent({CutSide::Source, n, k, r, t}),
                    hd_cutset_exponent({CutSide::Dest, m, k, r, t}));
  };
  HdStaticUpper best{objective(0.0), 0.0};
  const int steps = static_cast<int>(std::ceil(1.0 / t_step));
  for (int i = 1; i <= steps; ++i) {
    const double t = std::min(1.0, i * t_step);
    const double v = objective(t);
    if (v > best.d) best = {v, t};
  }
  // Golden-section refinement inside the best cell.
  double a = std::max(0.0, best.t_star - t_step);
  double b = std::min(1.0, best.t_star + t_step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  for (int i = 0; i < 100; ++i) {
    if (objective(c) >= objective(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  const double t_ref = 0.5 * (a + b);
  if (objective(t_ref) > best.d) best = {objective(t_ref), t_ref};
  // Both cuts swap under t -> 1 - t when m = n, so the optimum sits at 1/2.
  if (m == n && objective(0.5) >= best.d - 1e-12) best = {objective(0.5), 0.5};
  return best;
}

DmtCurve ddf_dmt_111() {
  return DmtCurve({Segment::linear(0.0, 2.0, 0.5, 1.0), Segment::rational(0.5, 1.0, 1.0, -1.0, 0.0, 1.0)},
                  {2.0, 1.0, 0.0});
}

MarcCurves marc_curves() {
  MarcCurves c{
      make_curve({{0.0, 2.0}, {0.5, 1.5}, {1.0, 0.0}}),
      make_curve({{0.0, 2.0}, {2.0 / 3, 2.0 / 3}, {0.8, 0.6}, {1.0, 0.0}}),
      DmtCurve({Segment::linear(0.0, 2.0, 0.5, 1.5), Segment::linear(0.5, 1.5, 2.0 / 3, 1.0),
                Segment::rational(2.0 / 3, 1.0, 2.0, -2.0, 0.0, 1.0)},
               {2.0, 1.5, 1.0, 0.0}),
      make_curve({{0.0, 2.0}, {2.0 / 3, 1.0}, {1.0, 0.0}}),
  };
  return c;
}

DmtCurve two_relay_curve(bool clustered) {
  if (!clustered) return mimo_dmt(1, 3);
  return make_curve({{0, 4}, {1, 1}, {1, 0}, {2, 0}});
}

DmtCurve coop_two_by_two_curve(CoopMode mode, bool clustered) {
  if (mode == CoopMode::Multicast && !clustered) return mimo_dmt(1, 3);
  return restrict_curve(mimo_dmt(2, 2), 0, 1);
}

}  // namespace relaydmt
