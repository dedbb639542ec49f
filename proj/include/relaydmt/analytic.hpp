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

// Closed-form DMT curves for relay topologies. (m, n, k) are the source,
// destination and relay antenna counts throughout.

#include "relaydmt/dmt_curve.hpp"

namespace relaydmt {

/// Full-duplex relay optimum: min{d_{m(n+k)}, d_{(m+k)n}}.
DmtCurve fd_relay_upper(int m, int n, int k);

/// Decode-and-forward: min{d_{(m+k)n}, d_mn + d_mk} up to min{m,n,k}, then d_mn.
DmtCurve fd_df_dmt(int m, int n, int k);

/// Relay clustered with the source. d_{(m+k)n} below r = 1, then
/// min{d_{m(n+1)}, d_{(m+k)n}}. Only proven for m <= 2; larger m is tagged
/// conjectured.
DmtCurve clustered_upper(int m, int n, int k);

/// DF with the relay clustered with the source: d_{(m+k)n} below r = 1 and d_mn
/// from r = 1 on (the value at r = 1 itself is taken from the d_mn branch).
DmtCurve clustered_df_dmt(int m, int n, int k);

enum class CutSide { Source, Dest };

/// Half-duplex cut exponent. Source side: single-antenna source, n_or_m is n.
/// Dest side: single-antenna destination, n_or_m is m.
struct HdExponentQuery {
  CutSide side = CutSide::Source;
  int n_or_m = 1;
  int k = 1;
  double r = 0.0;
  double t = 0.5;
};

double hd_cutset_exponent(const HdExponentQuery& q);

struct HdStaticUpper {
  double d = 0.0;
  double t_star = 0.5;
};

/// max_t min{d'_{C_S}(r,t), d'_{C_D}(r,t)}. Needs m = n = 1, the only case
/// where both exponents are known in closed form; throws otherwise.
HdStaticUpper hd_static_upper(int m, int n, int k, double r, double t_step = 1e-3);

/// DDF on a single-antenna relay channel: 2(1-r) up to 1/2, then (1-r)/r.
DmtCurve ddf_dmt_111();

/// Symmetric single-antenna MARC, in sum multiplexing gain.
struct MarcCurves {
  DmtCurve upper;
  DmtCurve cf;
  DmtCurve ddf_lower;
  DmtCurve maf;
};

MarcCurves marc_curves();

/// Single-antenna two-relay network: d_13 when nothing is clustered; d_22 up to
/// r = 1 and 0 beyond when R1 sits by the source and R2 by the destination.
DmtCurve two_relay_curve(bool clustered);

enum class CoopMode { Multicast, Interference };

/// Two cooperating transmitters and two receivers, sum multiplexing gain.
DmtCurve coop_two_by_two_curve(CoopMode mode, bool clustered = false);

}  // namespace relaydmt
