// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Integer codecs for plaintext polynomials, residue number systems over
// pairwise-coprime integer moduli, and numerator/denominator pairs for
// rational values.

#pragma once

#include <cstddef>
#include <vector>

#include "hefv/bigint.hpp"
#include "hefv/params.hpp"
#include "hefv/scheme.hpp"

namespace hefv {

// Signed binary: the bits of |m| as coefficients, all negated when m < 0, so
// every coefficient is -1, 0 or 1 and the polynomial evaluates to m at x = 2.
// Throws message_too_large when |m| >= 2^n.
Plaintext encode_int(const BigInt& m, const ParamSet& p);

// sum_i c_i 2^i over the centered coefficients.
BigInt decode_int(const Plaintext& pt);

// Largest number of fresh encodings that can be added before a coefficient
// can leave (-t/2, t/2]: floor(t / 2).
BigInt addition_capacity(const ParamSet& p);

class RnsBasis {
 public:
  // Throws invalid_parameter unless every modulus is >= 2 and the moduli are
  // pairwise coprime.
  explicit RnsBasis(std::vector<BigInt> moduli);

  const std::vector<BigInt>& moduli() const { return moduli_; }
  std::size_t size() const { return moduli_.size(); }
  const BigInt& product() const { return product_; }

 private:
  std::vector<BigInt> moduli_;
  BigInt product_;
  std::vector<BigInt> cofactors_;  // (M / m_i) * ((M / m_i)^-1 mod m_i)

  friend BigInt crt_combine(const std::vector<BigInt>& residues, const RnsBasis& basis);
};

// Centered residues of x; x must lie in (-M/2, M/2], else out_of_range.
std::vector<BigInt> crt_split(const BigInt& x, const RnsBasis& basis);

// The unique x in (-M/2, M/2] congruent to every residue.
BigInt crt_combine(const std::vector<BigInt>& residues, const RnsBasis& basis);

// A rational num / den with both parts encrypted. The denominator is never
// reduced to lowest terms. den_bound is a plaintext-side upper bound on |den|
// that callers compare with addition_capacity or the depth budget.
struct EncryptedRational {
  Ciphertext num;
  Ciphertext den;
  BigInt den_bound;
};

EncryptedRational rational_add(const EncryptedRational& a, const EncryptedRational& b, const RelinKey& rk);
EncryptedRational rational_mul(const EncryptedRational& a, const EncryptedRational& b, const RelinKey& rk);

}  // namespace hefv
