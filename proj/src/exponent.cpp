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

#include "relaydmt/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relaydmt {
namespace {

constexpr double kFeasTol = 1e-12;
// Coordinates above 1 never help the constraint; 2 bounds every polygon.
constexpr double kBox = 2.0;

// ca a + cb b <= rhs
struct HalfPlane {
  double ca, cb, rhs;
};

struct Vertex {
  double a, b;
};

void check_args(int n, int k, double r, double t) {
  if (n < 1 || k < 1) throw std::invalid_argument("exponent: n and k must be >= 1");
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("exponent: t must be in (0, 1)");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("exponent: r must be in [0, 1]");
}

double lhs_ab(double a, double b, double t) {
  return t * std::max({0.0, 1.0 - a, 1.0 - b}) + (1.0 - t) * std::max(0.0, 1.0 - a);
}

std::vector<double> expand(int n, int k, double a, double b) {
  std::vector<double> alpha(n, a);
  alpha.insert(alpha.end(), k, b);
  return alpha;
}

// Lowest-cost vertex of the polygon cut out by `planes` inside the box.
bool best_vertex(std::vector<HalfPlane> planes, int n, int k, Vertex& out, double& cost) {
  planes.push_back({-1, 0, 0});
  planes.push_back({0, -1, 0});
  planes.push_back({1, 0, kBox});
  planes.push_back({0, 1, kBox});
  bool found = false;
  cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const auto& p = planes[i];
      const auto& q = planes[j];
      const double det = p.ca * q.cb - p.cb * q.ca;
      if (std::abs(det) < 1e-15) continue;
      const Vertex v{(p.rhs * q.cb - p.cb * q.rhs) / det, (p.ca * q.rhs - p.rhs * q.ca) / det};
      bool ok = true;
      for (const auto& h : planes) ok = ok && h.ca * v.a + h.cb * v.b <= h.rhs + kFeasTol;
      if (!ok) continue;
      const double c = n * v.a + k * v.b;
      if (c < cost - kFeasTol) {
        cost = c;
        out = v;
        found = true;
      }
    }
  }
  return found;
}

}  // namespace

double outage_constraint_lhs(int n, int k, double t, std::span<const double> alpha) {
  if (alpha.size() != static_cast<std::size_t>(n + k)) {
    throw std::invalid_argument("outage_constraint_lhs: alpha must have n + k entries");
  }
  const double a = *std::min_element(alpha.begin(), alpha.begin() + n);
  const double b = *std::min_element(alpha.begin() + n, alpha.end());
  return lhs_ab(a, b, t);
}

ExponentResult region_exponent(int n, int k, double r, double t) {
  check_args(n, k, r, t);
  // Each sub-region: its ordering constraints plus the linearised outage bound.
  const std::vector<HalfPlane> regions[5] = {
      // s1: b <= 1 <= a, t (1 - b) <= r
      {{0, 1, 1}, {-1, 0, -1}, {0, -t, r - t}},
      // s2: a <= b <= 1, 1 - a <= r
      {{1, -1, 0}, {0, 1, 1}, {-1, 0, r - 1}},
      // s3: b <= a <= 1, t (1 - b) + (1 - t)(1 - a) <= r
      {{-1, 1, 0}, {1, 0, 1}, {-(1 - t), -t, r - 1}},
      // s4: a <= 1 <= b, 1 - a <= r
      {{1, 0, 1}, {0, -1, -1}, {-1, 0, r - 1}},
      // s5: a, b >= 1, no outage constraint
      {{-1, 0, -1}, {0, -1, -1}},
  };
  ExponentResult best;
  best.g_star = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 5; ++i) {
    Vertex v{};
    double cost = 0.0;
    if (!best_vertex(regions[i], n, k, v, cost)) continue;
    if (cost < best.g_star - kFeasTol) {
      best.g_star = cost;
      best.argmin = expand(n, k, v.a, v.b);
      best.region = "s" + std::to_string(i + 1);
    }
  }
  return best;
}

ExponentResult grid_oracle(int n, int k, double r, double t, double step) {
  check_args(n, k, r, t);
  if (!(step > 0.0 && step <= 0.02)) throw std::invalid_argument("grid_oracle: step in (0, 0.02]");
  const int points = static_cast<int>(std::floor(1.5 / step + 1e-9));
  ExponentResult best;
  best.g_star = std::numeric_limits<double>::infinity();
  best.region = "grid";
  for (int i = 0; i <= points; ++i) {
    const double a = i * step;
    for (int j = 0; j <= points; ++j) {
      const double b = j * step;
      if (lhs_ab(a, b, t) > r + kFeasTol) continue;
      const double c = n * a + k * b;
      if (c < best.g_star) {
        best.g_star = c;
        best.argmin = expand(n, k, a, b);
      }
    }
  }
  return best;
}

}  // namespace relaydmt
