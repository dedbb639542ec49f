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

// SNR exponent of the half-duplex source cut with a single-antenna source.
//
// Channel gains |h_i|^2 = SNR^-alpha_i: n of them to the destination, k to
// the relay. The outage set is
//   t max{0, 1 - a, 1 - b} + (1 - t) max{0, 1 - a} <= r
// with a, b the smallest exponent of each group, and the exponent is the
// minimum of sum(alpha) over it.

#include <span>
#include <string>
#include <vector>

namespace relaydmt {

struct ExponentResult {
  double g_star = 0.0;
  std::vector<double> argmin;  // n entries for the direct group, then k
  std::string region;          // "s1".."s5" or "grid"
};

/// Left-hand side of the outage constraint at alpha.
double outage_constraint_lhs(int n, int k, double t, std::span<const double> alpha);

/// Minimum over the five sub-regions fixed by the order of a, b and 1; each
/// piece is a two-variable LP solved by enumerating the polygon's vertices.
ExponentResult region_exponent(int n, int k, double r, double t);

/// Brute-force companion on an (a, b) grid over [0, 1.5]^2. Never below the
/// true minimum and at most (n + k) step above it.
ExponentResult grid_oracle(int n, int k, double r, double t, double step);

}  // namespace relaydmt
