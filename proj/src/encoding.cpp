// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/encoding.hpp"

#include <gmp.h>

#include "hefv/error.hpp"

namespace hefv {

Plaintext encode_int(const BigInt& m, const ParamSet& p) {
  const std::size_t n = p.n();
  const BigInt mag = abs(m);
  if (bit_length(mag) > n)
    throw Error(Errc::message_too_large, "integer " + to_string(m) + " does not fit in " + std::to_string(n) +
                                             " signed binary digits");
  const int sign = sgn(m) < 0 ? -1 : 1;
  std::vector<BigInt> coeffs(n);
  for (std::size_t i = 0; i < n; ++i)
    if (mpz_tstbit(mag.get_mpz_t(), i)) coeffs[i] = sign;
  return Plaintext{RingElement::reduced(p.plaintext_ring(), std::move(coeffs))};
}

BigInt decode_int(const Plaintext& pt) {
  BigInt acc = 0;
  const auto c = pt.poly.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= 2;
    acc += c[i];
  }
  return acc;
}

BigInt addition_capacity(const ParamSet& p) { return p.t / 2; }

RnsBasis::RnsBasis(std::vector<BigInt> moduli) : moduli_(std::move(moduli)), product_(1) {
  if (moduli_.empty()) throw Error(Errc::invalid_parameter, "a residue basis needs at least one modulus");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 2) throw Error(Errc::invalid_parameter, "modulus " + to_string(moduli_[i]) + " is below 2");
    for (std::size_t j = 0; j < i; ++j)
      if (gcd(moduli_[i], moduli_[j]) != 1)
        throw Error(Errc::invalid_parameter,
                    "moduli " + to_string(moduli_[j]) + " and " + to_string(moduli_[i]) + " are not coprime");
    product_ *= moduli_[i];
  }
  for (const auto& m : moduli_) {
    BigInt rest = product_ / m, inv;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), m.get_mpz_t());
    cofactors_.push_back(rest * inv);
  }
}

std::vector<BigInt> crt_split(const BigInt& x, const RnsBasis& basis) {
  const BigInt& m = basis.product();
  // -M/2 < x <= M/2  <=>  -M < 2x <= M
  const BigInt twice = 2 * x;
  if (twice <= -m || twice > m)
    throw Error(Errc::out_of_range, to_string(x) + " lies outside (-M/2, M/2] for M = " + to_string(m));
  std::vector<BigInt> out;
  out.reserve(basis.size());
  for (const auto& mi : basis.moduli()) out.push_back(centered_reduce(x, mi));
  return out;
}

BigInt crt_combine(const std::vector<BigInt>& residues, const RnsBasis& basis) {
  if (residues.size() != basis.size())
    throw Error(Errc::length_mismatch, "expected " + std::to_string(basis.size()) + " residues, got " +
                                           std::to_string(residues.size()));
  BigInt acc = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) acc += residues[i] * basis.cofactors_[i];
  return centered_reduce(acc, basis.product());
}

EncryptedRational rational_add(const EncryptedRational& a, const EncryptedRational& b, const RelinKey& rk) {
  return {he_add(he_mul(a.num, b.den, rk), he_mul(b.num, a.den, rk)), he_mul(a.den, b.den, rk),
          a.den_bound * b.den_bound};
}

EncryptedRational rational_mul(const EncryptedRational& a, const EncryptedRational& b, const RelinKey& rk) {
  return {he_mul(a.num, b.num, rk), he_mul(a.den, b.den, rk), a.den_bound * b.den_bound};
}

}  // namespace hefv
