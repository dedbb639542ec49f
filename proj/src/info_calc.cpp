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

#include "relaydmt/info_calc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relaydmt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBisection = 200;
constexpr int kMaxDoubling = 1100;

using Complex = std::complex<double>;

double to_bits(double nats) { return nats / std::numbers::ln2; }

// Natural log det of a Hermitian positive definite matrix.
double ln_det_hpd(const CMatrix& m) {
  if (m.rows() == 1) return std::log(m(0, 0).real());
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw std::domain_error("log det: matrix not positive definite");
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += std::log(llt.matrixLLT()(i, i).real());
  return 2.0 * s;
}

void check_finite(const CMatrix& h) {
  for (int j = 0; j < h.cols(); ++j) {
    for (int i = 0; i < h.rows(); ++i) {
      if (!std::isfinite(h(i, j).real()) || !std::isfinite(h(i, j).imag())) {
        throw std::invalid_argument("log_det_capacity: non-finite channel entry");
      }
    }
  }
}

// Natural log det(I + H diag(q) H^dagger) via the smaller Gram matrix.
double ln_det_capacity(const CMatrix& h, const RVector& q) {
  if (h.rows() == 0 || h.cols() == 0) return 0.0;
  if (h.cols() != q.size()) throw std::invalid_argument("log_det_capacity: dimension mismatch");
  if (h.rows() == 1 && h.cols() == 1) return std::log1p(std::norm(h(0, 0)) * q(0));
  CMatrix g = h * q.cwiseSqrt().cast<Complex>().asDiagonal();
  CMatrix m;
  if (g.rows() <= g.cols()) {
    m = g * g.adjoint();
  } else {
    m = g.adjoint() * g;
  }
  m.diagonal().array() += 1.0;
  return ln_det_hpd(m);
}

RVector uniform(int size, double value) { return RVector::Constant(size, value); }

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("dimension mismatch");
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

CMatrix vstack(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch");
  CMatrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

CMatrix scalar(Complex v) {
  CMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

CMatrix row2(Complex a, Complex b) {
  CMatrix m(1, 2);
  m << a, b;
  return m;
}

RVector vec2(double a, double b) {
  RVector v(2);
  v << a, b;
  return v;
}

// sum_i ln((lambda_i + N) / (N + 1)), zero when N is infinite.
double ln_relay_gain(const CfGeometry& g, double noise) {
  if (std::isinf(noise)) return 0.0;
  double s = 0.0;
  for (double l : g.lambda) s += std::log1p((l - 1.0) / (noise + 1.0));
  return s;
}

// ln U for a half-duplex relay that listens a fraction t of the time.
double hd_ln_u(double ln_l_sd, double ln_l_srd, double t) {
  return ln_l_sd + (1.0 - t) / t * (ln_l_srd - ln_l_sd);
}

RateSolve fd_cf_core(const CfGeometry& g, double ln_l_srd) {
  RateSolve out;
  out.solve = solve_compression(g, ln_l_srd);
  out.rate = to_bits(g.ln_l_sd + ln_relay_gain(g, out.solve.noise_var));
  return out;
}

RateSolve hd_cf_core(const CfGeometry& g, double ln_l_srd, double t) {
  RateSolve out;
  if (t <= 0.0 || t >= 1.0) {
    out.solve.noise_var = kInf;
    out.rate = to_bits(g.ln_l_sd);
    return out;
  }
  out.solve = solve_compression(g, hd_ln_u(g.ln_l_sd, ln_l_srd, t));
  out.rate = to_bits(g.ln_l_sd + t * ln_relay_gain(g, out.solve.noise_var));
  return out;
}

double ln_l_srd_single(const ChannelDraw& d, const PowerAllocation& p) {
  const CMatrix& h_sd = d[LinkId::SD];
  const CMatrix& h_rd = d[LinkId::RD];
  const int m = static_cast<int>(h_sd.cols());
  const int k = static_cast<int>(h_rd.cols());
  RVector q(m + k);
  q.head(m).setConstant(p[0] / m);
  q.tail(k).setConstant(p[1] / k);
  return ln_det_capacity(hstack(h_sd, h_rd), q);
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("listen fraction must be in [0, 1]");
}

}  // namespace

double log_det_capacity(const CMatrix& h, double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("log_det_capacity: scale must be finite and >= 0");
  }
  check_finite(h);
  return to_bits(ln_det_capacity(h, uniform(static_cast<int>(h.cols()), scale)));
}

double log_det_capacity(const CMatrix& h, const RVector& q) {
  check_finite(h);
  for (int i = 0; i < q.size(); ++i) {
    if (!(q(i) >= 0.0)) throw std::invalid_argument("log_det_capacity: negative power");
  }
  return to_bits(ln_det_capacity(h, q));
}

double CfGeometry::ln_l(double noise) const {
  double s = ln_l_sd;
  for (double l : lambda) s += std::log(l + noise);
  return s;
}

double CfGeometry::log2_l(double noise) const { return to_bits(ln_l(noise)); }

CfGeometry cf_geometry(const CMatrix& h_sr, const CMatrix& h_sd, const RVector& q) {
  if (h_sr.cols() != q.size() || h_sd.cols() != q.size()) {
    throw std::invalid_argument("cf_geometry: dimension mismatch");
  }
  const auto sq = q.cwiseSqrt().cast<Complex>();
  const CMatrix f = h_sr * sq.asDiagonal();
  const CMatrix g = h_sd * sq.asDiagonal();
  // C = I + F (I + G^dagger G)^-1 F^dagger, and det(I + G^dagger G) = L_sd.
  CMatrix gram = g.adjoint() * g;
  gram.diagonal().array() += 1.0;
  CfGeometry out;
  Eigen::LLT<CMatrix> llt(gram);
  double s = 0.0;
  for (int i = 0; i < gram.rows(); ++i) s += std::log(llt.matrixLLT()(i, i).real());
  out.ln_l_sd = 2.0 * s;
  const CMatrix x = llt.matrixL().solve(f.adjoint());
  CMatrix c = x.adjoint() * x;
  c.diagonal().array() += 1.0;
  if (c.rows() == 1) {
    out.lambda.push_back(c(0, 0).real());
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(c, Eigen::EigenvaluesOnly);
    for (int i = 0; i < c.rows(); ++i) out.lambda.push_back(std::max(1.0, eig.eigenvalues()(i)));
  }
  return out;
}

double compression_residual(const CfGeometry& g, double ln_u, double noise) {
  const double k = g.k();
  double s = 0.0;
  for (double l : g.lambda) s += std::log(l + noise);
  return std::abs(noise - std::exp((g.ln_l_sd - ln_u + s) / k));
}

CompressionSolve solve_compression(const CfGeometry& g, double ln_u) {
  CompressionSolve out;
  if (ln_u - g.ln_l_sd <= std::log1p(1e-12)) {
    out.noise_var = kInf;
    return out;
  }
  const double k = g.k();
  const double ln_c = (g.ln_l_sd - ln_u) / k;
  auto f = [&](double n) {
    double s = 0.0;
    for (double l : g.lambda) s += std::log(l + n);
    return n - std::exp(ln_c + s / k);
  };
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > kMaxDoubling) {
      out.noise_var = hi;
      out.converged = false;
      return out;
    }
  }
  // Bisect down to adjacent doubles; a looser stop leaves |f| near 1e-14 * N,
  // which is above 1e-9 once N reaches 1e5.
  int it = 0;
  while (it < kMaxBisection) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++it;
  }
  const double f_lo = std::abs(f(lo));
  const double f_hi = std::abs(f(hi));
  out.noise_var = f_lo < f_hi ? lo : hi;
  out.iterations = it;
  out.residual = std::min(f_lo, f_hi);
  out.converged = out.residual <= 1e-9 * (1.0 + out.noise_var);
  return out;
}

CutsetValues fd_cutset_bounds(const ChannelDraw& d, const PowerAllocation& p) {
  CutsetValues v;
  v.i_cs = log_det_capacity(vstack(d[LinkId::SR], d[LinkId::SD]), p[0]);
  v.i_cd = log_det_capacity(hstack(d[LinkId::SD], d[LinkId::RD]), p[0] + p[1]);
  return v;
}

CfGeometry single_relay_geometry(const ChannelDraw& d, const PowerAllocation& p) {
  const int m = static_cast<int>(d[LinkId::SD].cols());
  return cf_geometry(d[LinkId::SR], d[LinkId::SD], uniform(m, p[0] / m));
}

double log2_l_srd(const ChannelDraw& d, const PowerAllocation& p) {
  return to_bits(ln_l_srd_single(d, p));
}

CutsetValues fd_cutset_same_covariance(const ChannelDraw& d, const PowerAllocation& p) {
  CutsetValues v;
  v.i_cs = single_relay_geometry(d, p).log2_l(0.0);
  v.i_cd = log2_l_srd(d, p);
  return v;
}

RateSolve fd_cf_rate(const ChannelDraw& d, const PowerAllocation& p) {
  return fd_cf_core(single_relay_geometry(d, p), ln_l_srd_single(d, p));
}

double fd_cf_rate_product_form(const CfGeometry& g, double log2_l_srd, double noise) {
  const double k = g.k();
  if (std::isinf(noise)) return to_bits(g.ln_l_sd);
  const double ln_a = g.ln_l(noise) / k;
  const double ln_b = log2_l_srd * std::numbers::ln2 / k;
  // ln(ab/(a+b)) = ln a + ln b - ln(a + b), evaluated without overflow.
  const double ln_sum = std::max(ln_a, ln_b) + std::log1p(std::exp(-std::abs(ln_a - ln_b)));
  return to_bits(k * (ln_a + ln_b - ln_sum));
}

DfRates fd_df_rates(const ChannelDraw& d, const PowerAllocation& p) {
  const int m = static_cast<int>(d[LinkId::SD].cols());
  DfRates r;
  r.i_sr = log_det_capacity(d[LinkId::SR], p[0] / m);
  r.i_sd = log_det_capacity(d[LinkId::SD], p[0] / m);
  r.i_srd = log2_l_srd(d, p);
  return r;
}

double df_rate(const DfRates& q, double target) { return q.i_sr >= target ? q.i_srd : q.i_sd; }

CutsetValues hd_cutset_bounds(const ChannelDraw& d, const PowerAllocation& p, double t) {
  check_t(t);
  const CutsetValues fd = fd_cutset_bounds(d, p);
  const double k_sd = log_det_capacity(d[LinkId::SD], p[0]);
  CutsetValues v;
  v.i_cs = t * fd.i_cs + (1.0 - t) * k_sd;
  v.i_cd = t * k_sd + (1.0 - t) * fd.i_cd;
  return v;
}

RateSolve hd_cf_rate(const ChannelDraw& d, const PowerAllocation& p, double t) {
  check_t(t);
  return hd_cf_core(single_relay_geometry(d, p), ln_l_srd_single(d, p), t);
}

DdfResult ddf_rate(const ChannelDraw& d, const PowerAllocation& p, double target) {
  if (!(target >= 0.0)) throw std::invalid_argument("ddf_rate: target must be >= 0");
  const DfRates q = fd_df_rates(d, p);
  DdfResult out;
  if (q.i_sr > 0.0) {
    out.t_decode = std::min(1.0, target / q.i_sr);
  } else {
    out.t_decode = target > 0.0 ? 1.0 : 0.0;
  }
  out.rate = out.t_decode * q.i_sd + (1.0 - out.t_decode) * q.i_srd;
  return out;
}

MarcRates marc_cf_rates(const ChannelDraw& d, const PowerAllocation& p, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("marc_cf_rates: t must be in (0, 1)");
  const Complex h1r = d[LinkId::S1R](0, 0);
  const Complex h2r = d[LinkId::S2R](0, 0);
  const Complex h1d = d[LinkId::S1D](0, 0);
  const Complex h2d = d[LinkId::S2D](0, 0);
  const Complex hrd = d[LinkId::RD](0, 0);
  const double p1 = p[0];
  const double p2 = p[1];
  const double pr = p[2];
  const CfGeometry g = cf_geometry(row2(h1r, h2r), row2(h1d, h2d), vec2(p1, p2));
  const double ln_l_srd = std::log1p(std::norm(h1d) * p1 + std::norm(h2d) * p2 + std::norm(hrd) * pr);
  MarcRates out;
  out.solve = solve_compression(g, hd_ln_u(g.ln_l_sd, ln_l_srd, t));
  const double n = out.solve.noise_var;
  const double inv = std::isinf(n) ? 0.0 : 1.0 / (n + 1.0);
  auto user = [&](Complex hr, Complex hd, double pw) {
    return t * std::log2(1.0 + std::norm(hd) * pw + std::norm(hr) * pw * inv) +
           (1.0 - t) * std::log2(1.0 + std::norm(hd) * pw);
  };
  out.r1 = user(h1r, h1d, p1);
  out.r2 = user(h2r, h2d, p2);
  out.rsum = to_bits(g.ln_l_sd + t * ln_relay_gain(g, n));
  return out;
}

RateSolve marc_ts_user_rate(const ChannelDraw& d, const PowerAllocation& p, int user, double t) {
  if (user != 1 && user != 2) throw std::invalid_argument("marc_ts_user_rate: user is 1 or 2");
  check_t(t);
  const Complex hr = d[user == 1 ? LinkId::S1R : LinkId::S2R](0, 0);
  const Complex hd = d[user == 1 ? LinkId::S1D : LinkId::S2D](0, 0);
  const double pw = p[user - 1];
  const CfGeometry g = cf_geometry(scalar(hr), scalar(hd), uniform(1, pw));
  const double ln_l_srd = std::log1p(std::norm(hd) * pw + std::norm(d[LinkId::RD](0, 0)) * p[2]);
  return hd_cf_core(g, ln_l_srd, t);
}

MarcCutset marc_cutset_same_covariance(const ChannelDraw& d, const PowerAllocation& p) {
  const double a1r = std::norm(d[LinkId::S1R](0, 0));
  const double a2r = std::norm(d[LinkId::S2R](0, 0));
  const double a1d = std::norm(d[LinkId::S1D](0, 0));
  const double a2d = std::norm(d[LinkId::S2D](0, 0));
  const double ard = std::norm(d[LinkId::RD](0, 0));
  MarcCutset c;
  c.user1 = std::min(std::log2(1.0 + (a1r + a1d) * p[0]), std::log2(1.0 + a1d * p[0] + ard * p[2]));
  c.user2 = std::min(std::log2(1.0 + (a2r + a2d) * p[1]), std::log2(1.0 + a2d * p[1] + ard * p[2]));
  const CfGeometry g = cf_geometry(row2(d[LinkId::S1R](0, 0), d[LinkId::S2R](0, 0)),
                                   row2(d[LinkId::S1D](0, 0), d[LinkId::S2D](0, 0)),
                                   vec2(p[0], p[1]));
  c.sum = std::min(g.log2_l(0.0), std::log2(1.0 + a1d * p[0] + a2d * p[1] + ard * p[2]));
  return c;
}

TwoRelayDf two_relay_df_quantities(const ChannelDraw& d, const PowerAllocation& p) {
  const double sd = std::norm(d[LinkId::SD](0, 0)) * p[0];
  const double r1d = std::norm(d[LinkId::R1D](0, 0)) * p[1];
  const double r2d = std::norm(d[LinkId::R2D](0, 0)) * p[2];
  TwoRelayDf q;
  q.decode1 = std::log2(1.0 + std::norm(d[LinkId::SR1](0, 0)) * p[0]);
  q.decode2 = std::log2(1.0 + std::norm(d[LinkId::SR2](0, 0)) * p[0]);
  q.l_sd = std::log2(1.0 + sd);
  q.l_sr1d = std::log2(1.0 + sd + r1d);
  q.l_sr2d = std::log2(1.0 + sd + r2d);
  q.l_sr1r2d = std::log2(1.0 + sd + r1d + r2d);
  return q;
}

double two_relay_df_rate(const TwoRelayDf& q, double target) {
  const bool d1 = q.decode1 >= target;
  const bool d2 = q.decode2 >= target;
  if (d1 && d2) return q.l_sr1r2d;
  if (d1) return q.l_sr1d;
  if (d2) return q.l_sr2d;
  return q.l_sd;
}

MixedRate two_relay_mixed_rate(const ChannelDraw& d, const PowerAllocation& p, double target) {
  const Complex h_sr1 = d[LinkId::SR1](0, 0);
  const Complex h_sr2 = d[LinkId::SR2](0, 0);
  const Complex h_sd = d[LinkId::SD](0, 0);
  const Complex h_r1r2 = d[LinkId::R1R2](0, 0);
  const Complex h_r1d = d[LinkId::R1D](0, 0);
  const Complex h_r2d = d[LinkId::R2D](0, 0);
  MixedRate out;
  out.r1_decodes = std::log2(1.0 + std::norm(h_sr1) * p[0]) >= target;
  CfGeometry g;
  double ln_u;
  if (out.r1_decodes) {
    g = cf_geometry(row2(h_sr2, h_r1r2), row2(h_sd, h_r1d), vec2(p[0], p[1]));
    ln_u = std::log1p(std::norm(h_sd) * p[0] + std::norm(h_r1d) * p[1] + std::norm(h_r2d) * p[2]);
  } else {
    g = cf_geometry(scalar(h_sr2), scalar(h_sd), uniform(1, p[0]));
    ln_u = std::log1p(std::norm(h_sd) * p[0] + std::norm(h_r2d) * p[2]);
  }
  const RateSolve r = fd_cf_core(g, ln_u);
  out.rate = r.rate;
  out.solve = r.solve;
  return out;
}

double TwoRelayCutset::min() const { return std::min({c_s, c_sr1, c_d}); }

TwoRelayCutset two_relay_cutset_same_covariance(const ChannelDraw& d, const PowerAllocation& p) {
  const double a_sr1 = std::norm(d[LinkId::SR1](0, 0));
  const double a_sr2 = std::norm(d[LinkId::SR2](0, 0));
  const double a_sd = std::norm(d[LinkId::SD](0, 0));
  TwoRelayCutset c;
  c.c_s = std::log2(1.0 + (a_sr1 + a_sr2 + a_sd) * p[0]);
  CMatrix h(2, 2);
  h << d[LinkId::SR2](0, 0), d[LinkId::R1R2](0, 0), d[LinkId::SD](0, 0), d[LinkId::R1D](0, 0);
  c.c_sr1 = log_det_capacity(h, vec2(p[0], p[1]));
  c.c_d = std::log2(1.0 + a_sd * p[0] + std::norm(d[LinkId::R1D](0, 0)) * p[1] +
                    std::norm(d[LinkId::R2D](0, 0)) * p[2]);
  return c;
}

}  // namespace relaydmt
