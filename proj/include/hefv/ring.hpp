// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Arithmetic in Z_q and in the negacyclic rings R = Z[x]/(x^n + 1) and R_q.
//
// Coefficients are kept in centered form, i.e. in (-q/2, q/2], after every
// public operation. The one exception is the "lifted" state produced by
// ring_mul_lifted and scale_round, where coefficients are arbitrary integers
// and no modular reduction has been applied yet.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hefv/bigint.hpp"

namespace hefv {

struct RingParams {
  int d = 0;           // ring log-degree: the modulus polynomial is x^(2^(d-1)) + 1
  std::size_t n = 0;   // 2^(d-1) coefficients
  BigInt q;            // coefficient modulus, q >= 2

  // Validates d in [1, 18] and q >= 2.
  static RingParams make(int d, const BigInt& q);

  friend bool operator==(const RingParams& a, const RingParams& b) {
    return a.d == b.d && a.q == b.q;
  }
};

// Unique r with r = a (mod q) and -q/2 < r <= q/2. Throws invalid_modulus for q < 2.
BigInt centered_reduce(const BigInt& a, const BigInt& q);

class RingElement {
 public:
  RingElement() = default;

  // Zero polynomial.
  explicit RingElement(RingParams params);

  // Coefficient i is the coefficient of x^i; length must equal params.n.
  // Coefficients are reduced into centered form.
  static RingElement reduced(RingParams params, std::vector<BigInt> coeffs);

  // Coefficients are kept as given; the element is tagged as lifted.
  static RingElement lifted(RingParams params, std::vector<BigInt> coeffs);

  // Caller guarantees every coefficient is already centered modulo params.q.
  static RingElement trusted_reduced(RingParams params, std::vector<BigInt> coeffs);

  const RingParams& params() const { return params_; }
  std::size_t size() const { return coeffs_.size(); }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const BigInt> coeffs() const { return coeffs_; }
  bool is_reduced() const { return reduced_; }
  bool is_zero() const;

  // Same ring, same coefficients (the reduced tag is not compared).
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
  }

 private:
  RingElement(RingParams params, std::vector<BigInt> coeffs, bool reduced);

  RingParams params_;
  std::vector<BigInt> coeffs_;
  bool reduced_ = true;
};

enum class MulAlgorithm {
  automatic,   // schoolbook for small n, NTT otherwise
  schoolbook,  // O(n^2) serial reference
  ntt,         // multi-prime negacyclic NTT with exact CRT reconstruction
};

RingElement ring_reduce(const RingElement& a);
RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);

// [k * a]_q for an integer scalar k.
RingElement ring_scale(const RingElement& a, const BigInt& k);

RingElement ring_mul(const RingElement& a, const RingElement& b,
                     MulAlgorithm alg = MulAlgorithm::automatic);

// Exact product in Z[x]/(x^n + 1) with no reduction modulo q.
RingElement ring_mul_lifted(const RingElement& a, const RingElement& b,
                            MulAlgorithm alg = MulAlgorithm::automatic);

// Coefficient-wise round(t * c / q), ties toward +infinity, exact. Result is lifted.
RingElement scale_round(const RingElement& a, const BigInt& t, const BigInt& q);

// round(num / den) with ties toward +infinity; den > 0.
BigInt round_div(const BigInt& num, const BigInt& den);

BigInt inf_norm(const RingElement& a);

namespace reference {

// Serial O(n^2) negacyclic convolution over Z; kept as the baseline kernel.
std::vector<BigInt> negacyclic_schoolbook(std::span<const BigInt> a, std::span<const BigInt> b);

}  // namespace reference

}  // namespace hefv
