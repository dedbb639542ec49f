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

#include "relaydmt/dmt_curve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relaydmt {
namespace {

bool close(double x, double y, double tol = kCurveTolerance) {
  if (is_infinite(x) || is_infinite(y)) return x == y;
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

bool same_r(double x, double y) { return close(x, y); }

// Same function on the union of both pieces.
bool same_function(const Segment& a, const Segment& b) {
  if (a.infinite || b.infinite) return a.infinite && b.infinite;
  const double probes[] = {a.r_start, 0.5 * (b.r_start + b.r_end), b.r_end};
  for (double x : probes) {
    if (a.q0 + a.q1 * x <= 0.0 || b.q0 + b.q1 * x <= 0.0) return false;
    if (!close(a.at(x), b.at(x))) return false;
  }
  return true;
}

std::vector<double> merged_cut_points(const DmtCurve& a, const DmtCurve& b) {
  std::vector<double> cuts;
  for (const auto& k : a.knots()) cuts.push_back(k.r);
  for (const auto& k : b.knots()) cuts.push_back(k.r);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> out;
  for (double x : cuts) {
    if (out.empty() || !same_r(out.back(), x)) out.push_back(x);
  }
  return out;
}

const Segment& segment_covering(const DmtCurve& c, double mid) {
  auto segs = c.segments();
  for (const auto& s : segs) {
    if (mid >= s.r_start && mid <= s.r_end) return s;
  }
  throw std::logic_error("segment_covering: point outside curve");
}

Segment clipped(const Segment& s, double r0, double r1) {
  Segment out = s;
  out.r_start = r0;
  out.r_end = r1;
  return out;
}

// Roots of (pa0 + pa1 r)(qb0 + qb1 r) - (pb0 + pb1 r)(qa0 + qa1 r) strictly
// inside (x0, x1).
std::vector<double> crossings(const Segment& a, const Segment& b, double x0, double x1) {
  std::vector<double> roots;
  if (a.infinite || b.infinite) return roots;
  const double c0 = a.p0 * b.q0 - b.p0 * a.q0;
  const double c1 = a.p0 * b.q1 + a.p1 * b.q0 - b.p0 * a.q1 - b.p1 * a.q0;
  const double c2 = a.p1 * b.q1 - b.p1 * a.q1;
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), 1e-300});
  std::vector<double> candidates;
  if (std::abs(c2) <= 1e-14 * scale) {
    if (std::abs(c1) > 1e-14 * scale) candidates.push_back(-c0 / c1);
  } else {
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double qq = -0.5 * (c1 + std::copysign(sq, c1));
      if (qq != 0.0) {
        candidates.push_back(qq / c2);
        candidates.push_back(c0 / qq);
      } else {
        candidates.push_back(0.0);
      }
    }
  }
  for (double x : candidates) {
    if (x > x0 && x < x1 && !same_r(x, x0) && !same_r(x, x1)) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

Segment Segment::linear(double r0, double d0, double r1, double d1) {
  Segment s;
  s.r_start = r0;
  s.r_end = r1;
  s.p1 = (d1 - d0) / (r1 - r0);
  s.p0 = d0 - s.p1 * r0;
  return s;
}

Segment Segment::rational(double r0, double r1, double p0, double p1, double q0, double q1) {
  Segment s;
  s.r_start = r0;
  s.r_end = r1;
  s.p0 = p0;
  s.p1 = p1;
  s.q0 = q0;
  s.q1 = q1;
  return s;
}

Segment Segment::infinite_on(double r0, double r1) {
  Segment s;
  s.r_start = r0;
  s.r_end = r1;
  s.infinite = true;
  return s;
}

double Segment::at(double r) const {
  if (infinite) return kInfiniteDiversity;
  const double v = (p0 + p1 * r) / (q0 + q1 * r);
  // Clean up rounding noise around exact zeros such as d_mn(min(m, n)).
  return std::abs(v) < 1e-13 ? 0.0 : v;
}

bool Knot::is_jump() const { return !close(left, right); }

DmtCurve::DmtCurve(std::vector<Segment> segments, std::vector<double> knot_values,
                   bool conjectured)
    : segments_(std::move(segments)),
      knot_values_(std::move(knot_values)),
      conjectured_(conjectured) {
  if (segments_.empty()) throw std::invalid_argument("DmtCurve: no segments");
  if (knot_values_.size() != segments_.size() + 1) {
    throw std::invalid_argument("DmtCurve: need one knot value per segment boundary");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    auto& s = segments_[i];
    if (!std::isfinite(s.r_start) || !std::isfinite(s.r_end) || !(s.r_start < s.r_end)) {
      throw std::invalid_argument("DmtCurve: segment must satisfy r_start < r_end");
    }
    if (i > 0) {
      if (!same_r(segments_[i - 1].r_end, s.r_start)) {
        throw std::invalid_argument("DmtCurve: segments are not contiguous");
      }
      s.r_start = segments_[i - 1].r_end;
    }
    if (!s.infinite) {
      if (s.q0 + s.q1 * s.r_start <= 0.0 || s.q0 + s.q1 * s.r_end <= 0.0) {
        throw std::invalid_argument("DmtCurve: non-positive denominator");
      }
      for (double d : {s.d_start(), s.d_end()}) {
        if (!std::isfinite(d) || d < -1e-12) {
          throw std::invalid_argument("DmtCurve: negative diversity");
        }
      }
    }
  }
  for (double& v : knot_values_) {
    if (std::isnan(v) || v < -1e-12) throw std::invalid_argument("DmtCurve: negative diversity");
    if (v < 0.0) v = 0.0;
  }
  if (!close(knot_values_.front(), segments_.front().d_start()) ||
      !close(knot_values_.back(), segments_.back().d_end())) {
    throw std::invalid_argument("DmtCurve: end values must match the end segments");
  }
  normalize();
}

void DmtCurve::normalize() {
  std::vector<Segment> segs;
  std::vector<double> vals{knot_values_.front()};
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!segs.empty()) {
      auto& prev = segs.back();
      const double r = s.r_start;
      const double v = vals.back();
      if (same_function(prev, s) && close(prev.at(r), v) && close(s.at(r), v)) {
        prev.r_end = s.r_end;
        vals.back() = knot_values_[i + 1];
        continue;
      }
    }
    segs.push_back(s);
    vals.push_back(knot_values_[i + 1]);
  }
  segments_ = std::move(segs);
  knot_values_ = std::move(vals);
}

double DmtCurve::eval(double r) const {
  const double lo = domain_min();
  const double hi = domain_max();
  if (std::isnan(r) || (r < lo && !same_r(r, lo)) || (r > hi && !same_r(r, hi))) {
    throw std::out_of_range("DmtCurve::eval: multiplexing gain outside the curve domain");
  }
  // Binary search over boundaries r_0 < r_1 < ... < r_n.
  std::size_t first = 0;
  std::size_t last = segments_.size();
  auto boundary = [&](std::size_t i) {
    return i < segments_.size() ? segments_[i].r_start : segments_.back().r_end;
  };
  while (first < last) {
    const std::size_t mid = (first + last) / 2;
    if (boundary(mid + 1) < r) {
      first = mid + 1;
    } else {
      last = mid;
    }
  }
  const std::size_t seg = std::min(first, segments_.size() - 1);
  if (same_r(r, boundary(seg))) return knot_values_[seg];
  if (same_r(r, boundary(seg + 1))) return knot_values_[seg + 1];
  return segments_[seg].at(r);
}

std::vector<Knot> DmtCurve::knots() const {
  std::vector<Knot> out;
  out.reserve(knot_values_.size());
  for (std::size_t i = 0; i <= segments_.size(); ++i) {
    Knot k;
    k.r = i < segments_.size() ? segments_[i].r_start : segments_.back().r_end;
    k.value = knot_values_[i];
    k.left = i > 0 ? segments_[i - 1].at(k.r) : k.value;
    k.right = i < segments_.size() ? segments_[i].at(k.r) : k.value;
    out.push_back(k);
  }
  return out;
}

DmtCurve DmtCurve::as_conjectured() const {
  DmtCurve c = *this;
  c.conjectured_ = true;
  return c;
}

DmtCurve mimo_dmt(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("mimo_dmt: antenna counts must be >= 1");
  const int top = std::min(m, n);
  std::vector<Segment> segs;
  std::vector<double> vals;
  for (int j = 0; j <= top; ++j) {
    vals.push_back(static_cast<double>((m - j) * (n - j)));
    if (j < top) {
      segs.push_back(Segment::linear(j, (m - j) * (n - j), j + 1, (m - j - 1) * (n - j - 1)));
    }
  }
  return DmtCurve(std::move(segs), std::move(vals));
}

DmtCurve make_curve(std::span<const Breakpoint> points, std::span<const double> right_valued_jumps) {
  if (points.size() < 2) throw std::invalid_argument("make_curve: need at least two breakpoints");
  for (const auto& p : points) {
    if (!std::isfinite(p.r)) throw std::invalid_argument("make_curve: non-finite r");
    if (std::isnan(p.d) || p.d < 0.0) throw std::invalid_argument("make_curve: negative diversity");
  }
  // Group into (r, left value, right value).
  struct Group {
    double r, left, right;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!groups.empty() && p.r == groups.back().r) {
      if (groups.back().left != groups.back().right) {
        throw std::invalid_argument("make_curve: at most two breakpoints may share an r value");
      }
      groups.back().right = p.d;
      continue;
    }
    if (!groups.empty() && p.r < groups.back().r) {
      throw std::invalid_argument("make_curve: breakpoints must be ordered by r");
    }
    groups.push_back({p.r, p.d, p.d});
  }
  if (groups.size() < 2) throw std::invalid_argument("make_curve: degenerate domain");
  if (groups.front().left != groups.front().right || groups.back().left != groups.back().right) {
    throw std::invalid_argument("make_curve: jumps are not allowed at the domain ends");
  }
  std::vector<Segment> segs;
  std::vector<double> vals;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    bool take_right = false;
    for (double rj : right_valued_jumps) take_right = take_right || same_r(rj, g.r);
    vals.push_back(take_right ? g.right : g.left);
    if (i + 1 < groups.size()) {
      const double d0 = g.right;
      const double d1 = groups[i + 1].left;
      if (is_infinite(d0) != is_infinite(d1)) {
        throw std::invalid_argument(
            "make_curve: a piece cannot connect finite and infinite diversity; use a jump");
      }
      segs.push_back(is_infinite(d0) ? Segment::infinite_on(g.r, groups[i + 1].r)
                                     : Segment::linear(g.r, d0, groups[i + 1].r, d1));
    }
  }
  return DmtCurve(std::move(segs), std::move(vals));
}

DmtCurve make_curve(std::initializer_list<Breakpoint> points) {
  return make_curve(std::span<const Breakpoint>(points.begin(), points.size()));
}

DmtCurve restrict_curve(const DmtCurve& c, double r_lo, double r_hi) {
  if (!(r_lo < r_hi)) throw std::invalid_argument("restrict_curve: empty interval");
  if ((r_lo < c.domain_min() && !same_r(r_lo, c.domain_min())) ||
      (r_hi > c.domain_max() && !same_r(r_hi, c.domain_max()))) {
    throw std::out_of_range("restrict_curve: interval outside the curve domain");
  }
  r_lo = std::max(r_lo, c.domain_min());
  r_hi = std::min(r_hi, c.domain_max());
  std::vector<Segment> segs;
  std::vector<double> vals;
  const auto knots = c.knots();
  const auto all = c.segments();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& s = all[i];
    const double a = std::max(s.r_start, r_lo);
    const double b = std::min(s.r_end, r_hi);
    if (!(a < b) || same_r(a, b)) continue;
    if (segs.empty()) {
      vals.push_back(s.at(a));
    } else {
      vals.push_back(knots[i].value);
    }
    segs.push_back(clipped(s, a, b));
  }
  vals.push_back(segs.back().at(segs.back().r_end));
  return DmtCurve(std::move(segs), std::move(vals), c.conjectured());
}

DmtCurve join_curves(const DmtCurve& left, const DmtCurve& right, JumpValue at_junction) {
  if (!same_r(left.domain_max(), right.domain_min())) {
    throw std::invalid_argument("join_curves: curves do not meet");
  }
  std::vector<Segment> segs(left.segments().begin(), left.segments().end());
  std::vector<double> vals;
  for (const auto& k : left.knots()) vals.push_back(k.value);
  vals.back() = at_junction == JumpValue::Left ? left.value_at_end() : right.value_at_start();
  const auto rk = right.knots();
  for (std::size_t i = 0; i < right.segments().size(); ++i) {
    segs.push_back(right.segments()[i]);
    vals.push_back(rk[i + 1].value);
  }
  return DmtCurve(std::move(segs), std::move(vals), left.conjectured() || right.conjectured());
}

DmtCurve min_curves(const DmtCurve& a_in, const DmtCurve& b_in) {
  DmtCurve a = a_in;
  DmtCurve b = b_in;
  auto extend_if_zero = [](DmtCurve& shorter, const DmtCurve& longer) {
    if (shorter.domain_max() < longer.domain_max() &&
        !same_r(shorter.domain_max(), longer.domain_max()) && shorter.value_at_end() == 0.0) {
      const double r0 = shorter.domain_max();
      const double r1 = longer.domain_max();
      DmtCurve zero({Segment::linear(r0, 0.0, r1, 0.0)}, {0.0, 0.0});
      shorter = join_curves(shorter, zero, JumpValue::Left);
    }
  };
  extend_if_zero(a, b);
  extend_if_zero(b, a);
  const double lo = std::max(a.domain_min(), b.domain_min());
  const double hi = std::min(a.domain_max(), b.domain_max());
  if (!(lo < hi) || same_r(lo, hi)) throw std::invalid_argument("min_curves: disjoint domains");
  a = restrict_curve(a, lo, hi);
  b = restrict_curve(b, lo, hi);

  const auto cuts = merged_cut_points(a, b);
  std::vector<Segment> segs;
  std::vector<double> points{cuts.front()};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double x0 = cuts[i];
    const double x1 = cuts[i + 1];
    const double mid = 0.5 * (x0 + x1);
    const Segment& sa = segment_covering(a, mid);
    const Segment& sb = segment_covering(b, mid);
    std::vector<double> sub{x0};
    for (double x : crossings(sa, sb, x0, x1)) sub.push_back(x);
    sub.push_back(x1);
    for (std::size_t j = 0; j + 1 < sub.size(); ++j) {
      const double m = 0.5 * (sub[j] + sub[j + 1]);
      const Segment& pick = sa.at(m) <= sb.at(m) ? sa : sb;
      segs.push_back(clipped(pick, sub[j], sub[j + 1]));
      points.push_back(sub[j + 1]);
    }
  }
  std::vector<double> vals;
  vals.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == 0) {
      vals.push_back(segs.front().at(points[i]));
    } else if (i + 1 == points.size()) {
      vals.push_back(segs.back().at(points[i]));
    } else {
      vals.push_back(std::min(a.eval(points[i]), b.eval(points[i])));
    }
  }
  return DmtCurve(std::move(segs), std::move(vals), a.conjectured() || b.conjectured());
}

DmtCurve add_curves(const DmtCurve& a_in, const DmtCurve& b_in) {
  const double lo = std::max(a_in.domain_min(), b_in.domain_min());
  const double hi = std::min(a_in.domain_max(), b_in.domain_max());
  if (!(lo < hi)) throw std::invalid_argument("add_curves: disjoint domains");
  const DmtCurve a = restrict_curve(a_in, lo, hi);
  const DmtCurve b = restrict_curve(b_in, lo, hi);
  const auto cuts = merged_cut_points(a, b);
  std::vector<Segment> segs;
  std::vector<double> vals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const Segment& sa = segment_covering(a, mid);
    const Segment& sb = segment_covering(b, mid);
    if (sa.infinite || sb.infinite) {
      throw std::domain_error("add_curves: cannot add infinite diversity");
    }
    if (!sa.is_linear() || !sb.is_linear()) {
      throw std::domain_error("add_curves: only piecewise-linear curves can be added");
    }
    Segment s;
    s.r_start = cuts[i];
    s.r_end = cuts[i + 1];
    s.p0 = sa.p0 + sb.p0;
    s.p1 = sa.p1 + sb.p1;
    segs.push_back(s);
  }
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    double va;
    double vb;
    if (i == 0) {
      va = segs.front().at(cuts[0]);
      vb = 0.0;
    } else if (i + 1 == cuts.size()) {
      va = segs.back().at(cuts[i]);
      vb = 0.0;
    } else {
      va = a.eval(cuts[i]);
      vb = b.eval(cuts[i]);
    }
    if (is_infinite(va) || is_infinite(vb)) {
      throw std::domain_error("add_curves: cannot add infinite diversity");
    }
    vals.push_back(va + vb);
  }
  return DmtCurve(std::move(segs), std::move(vals), a.conjectured() || b.conjectured());
}

std::vector<std::string> monotonicity_violations(const DmtCurve& c) {
  std::vector<std::string> out;
  for (const auto& s : c.segments()) {
    if (s.infinite) continue;
    const double scale = std::max({1.0, std::abs(s.p0), std::abs(s.p1)});
    if (s.slope_sign() > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "increasing on [" << s.r_start << ", " << s.r_end << "]";
      out.push_back(msg.str());
    }
  }
  for (const auto& k : c.knots()) {
    auto geq = [](double x, double y) { return is_infinite(x) || close(x, y) || x > y; };
    if (!geq(k.left, k.value) || !geq(k.value, k.right)) {
      std::ostringstream msg;
      msg << "upward jump at r = " << k.r;
      out.push_back(msg.str());
    }
  }
  return out;
}

bool approx_equal(const DmtCurve& a, const DmtCurve& b, double tol) {
  const auto ka = a.knots();
  const auto kb = b.knots();
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (!close(ka[i].r, kb[i].r, tol) || !close(ka[i].value, kb[i].value, tol) ||
        !close(ka[i].left, kb[i].left, tol) || !close(ka[i].right, kb[i].right, tol)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.segments().size(); ++i) {
    const auto& sa = a.segments()[i];
    const auto& sb = b.segments()[i];
    const double mid = 0.5 * (sa.r_start + sa.r_end);
    if (!close(sa.at(mid), sb.at(mid), tol)) return false;
  }
  return a.conjectured() == b.conjectured();
}

std::string format_diversity(double d) {
  if (is_infinite(d)) return "inf";
  if (d == 0.0) d = 0.0;
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

std::string curve_csv(const DmtCurve& c, int samples, bool header) {
  if (samples < 2) throw std::invalid_argument("curve_csv: need at least two samples");
  std::vector<double> rs;
  const double lo = c.domain_min();
  const double hi = c.domain_max();
  for (int i = 0; i < samples; ++i) rs.push_back(lo + (hi - lo) * i / (samples - 1));
  const auto knots = c.knots();
  for (const auto& k : knots) rs.push_back(k.r);
  std::sort(rs.begin(), rs.end());
  std::vector<double> uniq;
  for (double r : rs) {
    if (uniq.empty() || !same_r(uniq.back(), r)) uniq.push_back(r);
  }
  std::ostringstream out;
  if (header) out << "r,d\n";
  for (double r : uniq) {
    auto it = std::find_if(knots.begin(), knots.end(), [&](const Knot& k) { return same_r(k.r, r); });
    if (it != knots.end() && it->is_jump()) {
      out << format_diversity(it->r) << ',' << format_diversity(it->left) << '\n';
      out << format_diversity(it->r) << ',' << format_diversity(it->right) << '\n';
    } else {
      const double rr = it != knots.end() ? it->r : r;
      out << format_diversity(rr) << ',' << format_diversity(c.eval(rr)) << '\n';
    }
  }
  return out.str();
}

std::string breakpoints_csv(const DmtCurve& c) {
  std::ostringstream out;
  out << "r,left,value,right\n";
  for (const auto& k : c.knots()) {
    out << format_diversity(k.r) << ',' << format_diversity(k.left) << ','
        << format_diversity(k.value) << ',' << format_diversity(k.right) << '\n';
  }
  return out.str();
}

}  // namespace relaydmt
