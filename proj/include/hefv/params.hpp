// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Parameter sets, the helper that picks parameters for a security and depth
// target, and the analytic noise and depth estimators.

#pragma once

#include <cstddef>
#include <optional>

#include "hefv/bigint.hpp"
#include "hefv/ring.hpp"
#include "hefv/sampling.hpp"

namespace hefv {

struct ParamSet {
  RingParams ring;               // d, n, q
  BigInt t;                      // plaintext modulus
  GaussianSpec gauss;            // sigma, B
  unsigned relin_base_log2 = 0;  // w: relinearisation digits are base 2^w
  BigInt delta;                  // floor(q / t)

  int d() const { return ring.d; }
  std::size_t n() const { return ring.n; }
  const BigInt& q() const { return ring.q; }

  // The ring R_t holding plaintext polynomials.
  RingParams plaintext_ring() const { return RingParams{ring.d, ring.n, t}; }

  // l + 1 with l = floor(log2(q) / w).
  std::size_t relin_digits() const;

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.ring == b.ring && a.t == b.t && a.gauss == b.gauss && a.relin_base_log2 == b.relin_base_log2;
  }
};

struct ParamOverrides {
  std::optional<int> d;
  std::optional<BigInt> q;
  std::optional<BigInt> t;
  std::optional<double> sigma;
  std::optional<std::int64_t> bound;  // defaults to ceil(10 sigma)
  std::optional<unsigned> relin_base_log2;
};

// d = 13, q = 2^128, t = 2^15, sigma = 16, B = 160, w = 32.
ParamSet default_params();

// Defaults merged with overrides; derived fields recomputed. Throws
// invalid_parameter naming the offending field.
ParamSet make_params(const ParamOverrides& overrides);

struct SecurityRequest {
  unsigned lambda = 0;  // bits
  unsigned depth = 0;   // multiplicative depth L
  std::optional<BigInt> t;
};

// Smallest (d, q) on the grid d in [10, 17], q in {2^60, 2^128, 2^186, 2^250}
// meeting both targets. Throws infeasible_request when none does.
ParamSet params_help(const SecurityRequest& request);

// 7.2 n / log2(q / sigma) - 110, floored at 0. A heuristic, not a proof.
double security_estimate(const ParamSet& p);

// Worst-case noise recurrence.
BigInt fresh_noise_bound(const ParamSet& p);                 // B (2n + 1)
BigInt mul_noise_bound(const ParamSet& p, const BigInt& v);  // noise after one he_mul

// Largest L with V_L < delta / 2, V_0 = fresh bound, V_{k+1} = mul bound(V_k).
unsigned estimate_depth(const ParamSet& p);

}  // namespace hefv
