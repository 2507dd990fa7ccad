// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Key generation, encryption, decryption and homomorphic arithmetic for the
// Fan-Vercauteren scheme.
//
//   keys:     s <- R_2,  pk = ([-(a s + e)]_q, a),  a <- R_q, e <- chi
//   encrypt:  ([pk1 u + e1 + delta m]_q, [pk2 u + e2]_q),  u, e1, e2 <- chi
//   decrypt:  [round(t [c1 + c2 s (+ c3 s^2)]_q / q)]_t
//
// Products are taken over Z[x]/(x^n + 1) without any intermediate reduction
// modulo q; only the scaled and rounded result is reduced. Reducing the
// products first corrupts the ciphertext.

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hefv/params.hpp"
#include "hefv/ring.hpp"
#include "hefv/rns.hpp"
#include "hefv/sampling.hpp"

namespace hefv {

// A polynomial of R_t.
struct Plaintext {
  RingElement poly;

  friend bool operator==(const Plaintext&, const Plaintext&) = default;
};

class SecretKey {
 public:
  SecretKey(ParamSet params, RingElement s);

  const ParamSet& params() const { return params_; }
  const RingElement& poly() const { return s_; }

  // NTT forms of s and s^2 sized for decryption products.
  const rns::Form& s_form() const { return *s_form_; }
  const rns::Form& s2_form() const { return *s2_form_; }
  std::size_t decrypt_primes() const { return decrypt_primes_; }

 private:
  ParamSet params_;
  RingElement s_;
  std::size_t decrypt_primes_ = 0;
  std::shared_ptr<const rns::Form> s_form_, s2_form_;
};

class PublicKey {
 public:
  PublicKey(ParamSet params, RingElement kp1, RingElement kp2);

  const ParamSet& params() const { return params_; }
  const RingElement& kp1() const { return kp1_; }
  const RingElement& kp2() const { return kp2_; }

  const rns::Form& kp1_form() const { return *kp1_form_; }
  const rns::Form& kp2_form() const { return *kp2_form_; }
  std::size_t encrypt_primes() const { return encrypt_primes_; }

  friend bool operator==(const PublicKey& a, const PublicKey& b) {
    return a.params_ == b.params_ && a.kp1_ == b.kp1_ && a.kp2_ == b.kp2_;
  }

 private:
  ParamSet params_;
  RingElement kp1_, kp2_;
  std::size_t encrypt_primes_ = 0;
  std::shared_ptr<const rns::Form> kp1_form_, kp2_form_;
};

struct RelinPair {
  RingElement r0;
  RingElement r1;

  friend bool operator==(const RelinPair&, const RelinPair&) = default;
};

// Pairs i = 0..l with r0_i + r1_i s = (2^w)^i s^2 - e_i.
class RelinKey {
 public:
  RelinKey(ParamSet params, std::vector<RelinPair> pairs);

  const ParamSet& params() const { return params_; }
  const std::vector<RelinPair>& pairs() const { return pairs_; }

  const rns::Form& r0_form(std::size_t i) const { return forms_->at(2 * i); }
  const rns::Form& r1_form(std::size_t i) const { return forms_->at(2 * i + 1); }
  std::size_t relin_primes() const { return relin_primes_; }

  friend bool operator==(const RelinKey& a, const RelinKey& b) {
    return a.params_ == b.params_ && a.pairs_ == b.pairs_;
  }

 private:
  ParamSet params_;
  std::vector<RelinPair> pairs_;
  std::size_t relin_primes_ = 0;
  std::shared_ptr<const std::vector<rns::Form>> forms_;
};

struct KeySet {
  SecretKey sk;
  PublicKey pk;
  RelinKey rlk;
};

// Two parts normally; three transiently after he_mul_raw.
class Ciphertext {
 public:
  Ciphertext(ParamSet params, std::vector<RingElement> parts);

  // (0, 0): a valid encryption of 0 with no noise.
  static Ciphertext trivial_zero(const ParamSet& params);

  const ParamSet& params() const { return params_; }
  std::size_t size() const { return parts_.size(); }
  const RingElement& operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<RingElement>& parts() const { return parts_; }

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.params_ == b.params_ && a.parts_ == b.parts_;
  }

 private:
  ParamSet params_;
  std::vector<RingElement> parts_;
};

KeySet keygen(const ParamSet& params, RandomSource& rng);

// Throws parameter_mismatch unless pt lives in R_t of the key's parameters.
Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt, RandomSource& rng);

// Excess noise is not detectable here; noise_budget is the diagnostic.
Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct);

// [c1 + c2 s (+ c3 s^2)]_q
RingElement decrypt_phase(const SecretKey& sk, const Ciphertext& ct);

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b);
Ciphertext he_sub(const Ciphertext& a, const Ciphertext& b);
Ciphertext he_neg(const Ciphertext& a);

// Multiplies by an integer constant; equivalent to |k| repeated additions.
Ciphertext he_scale(const Ciphertext& a, const BigInt& k);

// Multiplies by a plaintext polynomial of R_t (lifted to centered form).
Ciphertext he_mul_plain(const Ciphertext& a, const Plaintext& p);

// Three-part product, each part [round(t * product / q)]_q.
Ciphertext he_mul_raw(const Ciphertext& a, const Ciphertext& b);

// Sum of three-part products sum_i a_i * b_i with a single rounding step;
// multiplicative depth 1 for any length.
Ciphertext he_dot_raw(std::span<const Ciphertext> a, std::span<const Ciphertext> b);

// A two-part ciphertext transformed once for repeated use in product sums.
struct PreparedCiphertext {
  rns::Form c1, c2;
};

// Prime count that keeps sums of `pairs` exact products exact.
std::size_t dot_product_primes(const ParamSet& params, std::size_t pairs);
PreparedCiphertext prepare(const Ciphertext& c, std::size_t primes);

// Same result as he_dot_raw on the original ciphertexts, which must all use
// `params`; the forms must share one prime count covering a.size() pairs.
Ciphertext he_dot_raw_prepared(const ParamSet& params, std::span<const PreparedCiphertext* const> a,
                               std::span<const PreparedCiphertext* const> b);

Ciphertext relinearise(const Ciphertext& c, const RelinKey& rk);
Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b, const RelinKey& rk);

}  // namespace hefv
