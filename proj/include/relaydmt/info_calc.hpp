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

// Instantaneous mutual information for every protocol. All rates are in bits.
// Inputs are independent Gaussian with covariance I P/m per transmitter unless
// noted; "K" quantities are the cut-set forms with full power on every antenna.

#include <Eigen/Dense>
#include <vector>

#include "relaydmt/network_model.hpp"

namespace relaydmt {

using RVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 2 * kMaxAntennas, 1>;

/// log2 det(I + scale H H^dagger).
double log_det_capacity(const CMatrix& h, double scale);

/// log2 det(I + H diag(q) H^dagger), q >= 0.
double log_det_capacity(const CMatrix& h, const RVector& q);

struct CutsetValues {
  double i_cs = 0.0;
  double i_cd = 0.0;

  double min() const { return i_cs < i_cd ? i_cs : i_cd; }
};

struct CompressionSolve {
  double noise_var = 0.0;  // +inf when the compressed signal carries nothing
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

/// Compression geometry of a relay hearing source vector X (covariance Q).
///
///   L(N) = det([(N + 1) I_k, 0; 0, I_n] + [H_sr; H_sd] Q [H_sr; H_sd]^dagger)
///        = L_sd * prod_i (lambda_i + N)
///
/// where lambda_i >= 1 are the eigenvalues of the Schur complement
/// I + H_sr Q H_sr^dagger - B A^-1 B^dagger. Keeping the factored form makes
/// the fixed point a scalar problem in N for any k.
struct CfGeometry {
  double ln_l_sd = 0.0;
  std::vector<double> lambda;

  int k() const { return static_cast<int>(lambda.size()); }
  double ln_l(double noise) const;  // natural log of L(N)
  double log2_l(double noise) const;
};

CfGeometry cf_geometry(const CMatrix& h_sr, const CMatrix& h_sd, const RVector& q);

/// Solves N = (L(N) / U)^(1/k). The map g(N) = N - (L(N)/U)^(1/k) is convex
/// with g(0) < 0, so there is exactly one root whenever U > L_sd; bisection
/// brackets it by doubling. U <= L_sd (1 + 1e-12) returns N = +inf.
CompressionSolve solve_compression(const CfGeometry& g, double ln_u);

/// Residual |N - (L(N)/U)^(1/k)| of a finite noise level.
double compression_residual(const CfGeometry& g, double ln_u, double noise);

struct RateSolve {
  double rate = 0.0;
  CompressionSolve solve;
};

// ---- single relay ---------------------------------------------------------
// Draw links SR, SD, RD; powers (P_S, P_R).

/// Cut-set K forms: i_cs = log2 K'_{S,RD} (power P_S), i_cd = log2 K_{SR,D}
/// (power P_S + P_R on every antenna).
CutsetValues fd_cutset_bounds(const ChannelDraw& d, const PowerAllocation& p);

/// Cut-set with the covariances the protocols actually use:
/// i_cs = log2 L'_{S,RD} = log2 L(0), i_cd = log2 L_{SR,D}.
CutsetValues fd_cutset_same_covariance(const ChannelDraw& d, const PowerAllocation& p);

CfGeometry single_relay_geometry(const ChannelDraw& d, const PowerAllocation& p);
double log2_l_srd(const ChannelDraw& d, const PowerAllocation& p);

RateSolve fd_cf_rate(const ChannelDraw& d, const PowerAllocation& p);

/// k log2(a b / (a + b)) with a = L(N)^(1/k), b = L_{SR,D}^(1/k); equal to the
/// fd_cf_rate expression at the fixed point.
double fd_cf_rate_product_form(const CfGeometry& g, double log2_l_srd, double noise);

struct DfRates {
  double i_sr = 0.0;
  double i_sd = 0.0;
  double i_srd = 0.0;
};

DfRates fd_df_rates(const ChannelDraw& d, const PowerAllocation& p);

/// DF destination rate: joint rate if the relay decodes target, else direct.
double df_rate(const DfRates& q, double target);

CutsetValues hd_cutset_bounds(const ChannelDraw& d, const PowerAllocation& p, double t);

RateSolve hd_cf_rate(const ChannelDraw& d, const PowerAllocation& p, double t);

struct DdfResult {
  double t_decode = 1.0;
  double rate = 0.0;
};

DdfResult ddf_rate(const ChannelDraw& d, const PowerAllocation& p, double target);

// ---- MARC -----------------------------------------------------------------
// Draw links S1R, S2R, S1D, S2D, RD; powers (P_S1, P_S2, P_R).

struct MarcRates {
  double r1 = 0.0;
  double r2 = 0.0;
  double rsum = 0.0;
  CompressionSolve solve;
};

MarcRates marc_cf_rates(const ChannelDraw& d, const PowerAllocation& p, double t);

/// Per-user rate when the users time-share the relay: user i alone with a
/// half-duplex CF relay at listen fraction t.
RateSolve marc_ts_user_rate(const ChannelDraw& d, const PowerAllocation& p, int user, double t);

struct MarcCutset {
  double user1 = 0.0;
  double user2 = 0.0;
  double sum = 0.0;
};

MarcCutset marc_cutset_same_covariance(const ChannelDraw& d, const PowerAllocation& p);

// ---- two relays -----------------------------------------------------------
// Draw links SR1, SR2, SD, R1R2, R1D, R2D; powers (P_S, P_R1, P_R2).

struct TwoRelayDf {
  double decode1 = 0.0;
  double decode2 = 0.0;
  double l_sd = 0.0;
  double l_sr1d = 0.0;
  double l_sr2d = 0.0;
  double l_sr1r2d = 0.0;
};

TwoRelayDf two_relay_df_quantities(const ChannelDraw& d, const PowerAllocation& p);

/// Destination rate with both relays doing DF; each relay joins only if it
/// decodes target on its own.
double two_relay_df_rate(const TwoRelayDf& q, double target);

struct MixedRate {
  bool r1_decodes = false;
  double rate = 0.0;
  CompressionSolve solve;
};

/// R1 decodes and forwards, R2 compresses and forwards.
MixedRate two_relay_mixed_rate(const ChannelDraw& d, const PowerAllocation& p, double target);

struct TwoRelayCutset {
  double c_s = 0.0;    // {S} | {R1, R2, D}
  double c_sr1 = 0.0;  // {S, R1} | {R2, D}
  double c_d = 0.0;    // {S, R1, R2} | {D}

  double min() const;
};

TwoRelayCutset two_relay_cutset_same_covariance(const ChannelDraw& d, const PowerAllocation& p);

}  // namespace relaydmt
