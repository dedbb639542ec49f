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

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace relaydmt {

// Sentinel for "outage probability decays faster than any power of SNR".
// Only ever compared or min-ed; adding it to a finite diversity throws.
inline constexpr double kInfiniteDiversity = std::numeric_limits<double>::infinity();

inline bool is_infinite(double d) { return d == kInfiniteDiversity; }

// Tolerance used to snap multiplexing gains onto breakpoints and to merge
// collinear pieces.
inline constexpr double kCurveTolerance = 1e-12;

/// One piece of a DMT curve on [r_start, r_end].
///
/// The value is the linear-fractional function (p0 + p1 r) / (q0 + q1 r).
/// All piecewise-linear pieces have q0 = 1, q1 = 0; the only non-linear
/// pieces needed are the hyperbolic DDF branches such as (1 - r) / r.
struct Segment {
  double r_start = 0.0;
  double r_end = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double q0 = 1.0;
  double q1 = 0.0;
  bool infinite = false;

  static Segment linear(double r0, double d0, double r1, double d1);
  static Segment rational(double r0, double r1, double p0, double p1, double q0, double q1);
  static Segment infinite_on(double r0, double r1);

  bool is_linear() const { return infinite || q1 == 0.0; }
  double at(double r) const;
  double d_start() const { return at(r_start); }
  double d_end() const { return at(r_end); }
  // Sign of the derivative is the sign of this quantity on the whole piece.
  double slope_sign() const { return p1 * q0 - p0 * q1; }
};

/// Breakpoint of a curve with its one-sided limits. At the first breakpoint
/// `left` equals `value`; at the last one `right` equals `value`.
struct Knot {
  double r;
  double left;
  double value;
  double right;

  bool is_jump() const;
};

/// Input point for make_curve. Two consecutive points with the same r
/// declare a jump.
struct Breakpoint {
  double r;
  double d;
};

enum class JumpValue { Left, Right };

/// Diversity as a function of multiplexing gain.
///
/// Immutable value type. Pieces are contiguous; jumps sit only at piece
/// boundaries, and the value attained at a jump is stored explicitly
/// (left-continuous unless the constructor was told otherwise).
class DmtCurve {
 public:
  // knot_values[i] is the value attained at the i-th boundary; there is one
  // more knot value than segments. Throws std::invalid_argument when the
  // pieces are not contiguous or produce negative diversity.
  DmtCurve(std::vector<Segment> segments, std::vector<double> knot_values,
           bool conjectured = false);

  double eval(double r) const;

  double domain_min() const { return segments_.front().r_start; }
  double domain_max() const { return segments_.back().r_end; }
  std::span<const Segment> segments() const { return segments_; }
  std::vector<Knot> knots() const;

  // Result of a statement the underlying theory only conjectures.
  bool conjectured() const { return conjectured_; }
  DmtCurve as_conjectured() const;

  double value_at_start() const { return knot_values_.front(); }
  double value_at_end() const { return knot_values_.back(); }

 private:
  void normalize();

  std::vector<Segment> segments_;
  std::vector<double> knot_values_;
  bool conjectured_ = false;
};

/// DMT of an m x n point-to-point MIMO channel: linear between the points
/// (j, (m - j)(n - j)), j = 0..min(m, n).
DmtCurve mimo_dmt(int m, int n);

/// Builds a piecewise-linear curve. `right_valued_jumps` lists the jump
/// locations whose attained value is the right-hand one.
DmtCurve make_curve(std::span<const Breakpoint> points,
                    std::span<const double> right_valued_jumps = {});
DmtCurve make_curve(std::initializer_list<Breakpoint> points);

/// Exact pointwise minimum. A curve that ends at zero before the other one
/// is extended by zero; otherwise the common domain is used.
DmtCurve min_curves(const DmtCurve& a, const DmtCurve& b);

/// Pointwise sum of two piecewise-linear finite curves on their common
/// domain. Throws std::domain_error on infinite or non-linear pieces.
DmtCurve add_curves(const DmtCurve& a, const DmtCurve& b);

DmtCurve restrict_curve(const DmtCurve& c, double r_lo, double r_hi);

/// Concatenates two curves that meet at left.domain_max() == right.domain_min().
DmtCurve join_curves(const DmtCurve& left, const DmtCurve& right, JumpValue at_junction);

/// Lint: returns a description of every place where the curve increases.
std::vector<std::string> monotonicity_violations(const DmtCurve& c);
inline bool is_non_increasing(const DmtCurve& c) { return monotonicity_violations(c).empty(); }

bool approx_equal(const DmtCurve& a, const DmtCurve& b, double tol = 1e-12);

std::string format_diversity(double d);

// "r,d" rows on a uniform grid of `samples` points, plus both one-sided
// limits at every jump. Infinite values are written as "inf".
std::string curve_csv(const DmtCurve& c, int samples = 101, bool header = true);

// Sidecar listing every breakpoint: "r,left,value,right".
std::string breakpoints_csv(const DmtCurve& c);

}  // namespace relaydmt
