// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/params.hpp"

#include <cmath>

#include "hefv/error.hpp"

namespace hefv {
namespace {

constexpr int kDefaultD = 13;
constexpr unsigned kDefaultLogQ = 128;
constexpr unsigned kDefaultLogT = 15;
constexpr double kDefaultSigma = 16.0;
constexpr unsigned kDefaultRelinBaseLog2 = 32;
constexpr int kMaxD = 17;
constexpr std::size_t kMaxLogQ = 600;

[[noreturn]] void invalid(const char* field, const std::string& why) {
  throw Error(Errc::invalid_parameter, std::string("invalid parameter '") + field + "': " + why);
}

}  // namespace

std::size_t ParamSet::relin_digits() const {
  // floor(log2 q) = bit_length(q) - 1
  return (bit_length(ring.q) - 1) / relin_base_log2 + 1;
}

ParamSet default_params() { return make_params({}); }

ParamSet make_params(const ParamOverrides& o) {
  const int d = o.d.value_or(kDefaultD);
  const BigInt q = o.q.value_or(pow2(kDefaultLogQ));
  const BigInt t = o.t.value_or(pow2(kDefaultLogT));
  const double sigma = o.sigma.value_or(kDefaultSigma);
  const unsigned w = o.relin_base_log2.value_or(kDefaultRelinBaseLog2);

  if (d < 2 || d > kMaxD) invalid("d", "must lie in [2, " + std::to_string(kMaxD) + "]");
  if (q < 2) invalid("q", "must be at least 2");
  if (bit_length(q) > kMaxLogQ) invalid("q", "must be below 2^" + std::to_string(kMaxLogQ));
  if (t < 2) invalid("t", "must be at least 2");
  if (t >= q) invalid("t", "must be smaller than q");
  if (!(sigma > 0) || !std::isfinite(sigma)) invalid("sigma", "must be positive");
  if (w < 1 || w > 62) invalid("relin_base_log2", "must lie in [1, 62]");

  ParamSet p;
  p.ring = RingParams::make(d, q);
  p.t = t;
  p.gauss = o.bound ? GaussianSpec{sigma, *o.bound} : GaussianSpec::with_default_bound(sigma);
  if (p.gauss.bound < 1) invalid("B", "must be at least 1");
  if (p.gauss.bound > (std::int64_t{1} << 24)) invalid("B", "must be at most 2^24");
  p.relin_base_log2 = w;
  p.delta = q / t;
  if (p.delta < 2) invalid("t", "delta = floor(q/t) must be at least 2");
  return p;
}

double security_estimate(const ParamSet& p) {
  const double log_q_over_sigma = log2_abs(p.q()) - std::log2(p.gauss.sigma);
  if (log_q_over_sigma <= 0) return 0.0;
  const double est = 7.2 * static_cast<double>(p.n()) / log_q_over_sigma - 110.0;
  return est > 0 ? est : 0.0;
}

BigInt fresh_noise_bound(const ParamSet& p) {
  return BigInt(static_cast<long>(p.gauss.bound)) * BigInt(static_cast<unsigned long>(2 * p.n() + 1));
}

BigInt mul_noise_bound(const ParamSet& p, const BigInt& v) {
  const BigInt n = static_cast<unsigned long>(p.n());
  const BigInt b = static_cast<long>(p.gauss.bound);
  const BigInt ell_plus_1 = static_cast<unsigned long>(p.relin_digits());
  BigInt relin = n * ell_plus_1 * pow2(p.relin_base_log2) * b;
  relin /= 2;
  return 2 * n * p.t * v + n * p.t * b * (n + 1) + relin;
}

unsigned estimate_depth(const ParamSet& p) {
  BigInt v = fresh_noise_bound(p);
  if (2 * v >= p.delta) return 0;
  unsigned depth = 0;
  for (;;) {
    v = mul_noise_bound(p, v);
    if (2 * v >= p.delta) return depth;
    ++depth;
  }
}

ParamSet params_help(const SecurityRequest& request) {
  if (request.lambda < 1) throw Error(Errc::invalid_parameter, "lambda must be at least 1");
  static const unsigned kLogQs[] = {60, 128, 186, 250};
  for (int d = 10; d <= kMaxD; ++d) {
    for (unsigned log_q : kLogQs) {
      ParamOverrides o;
      o.d = d;
      o.q = pow2(log_q);
      o.t = request.t;
      ParamSet p;
      try {
        p = make_params(o);
      } catch (const Error&) {
        continue;
      }
      if (security_estimate(p) >= request.lambda && estimate_depth(p) >= request.depth) return p;
    }
  }
  throw Error(Errc::infeasible_request, "no parameter set with d <= 17 reaches " + std::to_string(request.lambda) +
                                            " bits of security at depth " + std::to_string(request.depth));
}

}  // namespace hefv
