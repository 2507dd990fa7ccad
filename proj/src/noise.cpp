// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/noise.hpp"

#include <gmp.h>

#include "hefv/error.hpp"

namespace hefv {

RingElement noise_term(const Ciphertext& ct, const SecretKey& sk, const Plaintext& pt) {
  const ParamSet& p = sk.params();
  if (!(ct.params() == p)) throw Error(Errc::parameter_mismatch, "ciphertext and secret key use different parameters");
  if (!(pt.poly.params() == p.plaintext_ring()))
    throw Error(Errc::parameter_mismatch, "plaintext does not belong to R_t of these parameters");
  const RingElement phase = decrypt_phase(sk, ct);
  std::vector<BigInt> e(p.n());
  for (std::size_t j = 0; j < p.n(); ++j) {
    mpz_mul(e[j].get_mpz_t(), p.delta.get_mpz_t(), pt.poly[j].get_mpz_t());
    mpz_sub(e[j].get_mpz_t(), phase[j].get_mpz_t(), e[j].get_mpz_t());
  }
  return RingElement::reduced(p.ring, std::move(e));
}

double noise_budget(const Ciphertext& ct, const SecretKey& sk, const Plaintext& pt) {
  const ParamSet& p = sk.params();
  BigInt norm = inf_norm(noise_term(ct, sk, pt));
  if (norm < 1) norm = 1;
  return log2_abs(p.delta) - 1.0 - log2_abs(norm);
}

}  // namespace hefv
