// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/scheme.hpp"

#include <gmp.h>

#include <algorithm>
#include <utility>

#include "hefv/error.hpp"

namespace hefv {
namespace {

void require_member(const ParamSet& params, const RingElement& e, const char* what) {
  if (!(e.params() == params.ring))
    throw Error(Errc::parameter_mismatch, std::string(what) + " does not belong to R_q of these parameters");
  if (!e.is_reduced()) throw Error(Errc::invalid_parameter, std::string(what) + " is not in reduced form");
}

void require_same_params(const Ciphertext& a, const Ciphertext& b) {
  if (!(a.params() == b.params())) throw Error(Errc::parameter_mismatch, "ciphertexts use different parameters");
}

void require_two_parts(const Ciphertext& c) {
  if (c.size() != 2)
    throw Error(Errc::unrelinearised_operand, "operand has " + std::to_string(c.size()) +
                                                  " parts; relinearise before further arithmetic");
}

std::size_t bits_of(std::size_t v) {
  std::size_t b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

// x_j + y_j for a lifted vector x and reduced element y, then reduced mod q.
RingElement add_reduce(const ParamSet& p, std::vector<BigInt> lifted, const RingElement& y) {
  for (std::size_t j = 0; j < lifted.size(); ++j) mpz_add(lifted[j].get_mpz_t(), lifted[j].get_mpz_t(), y[j].get_mpz_t());
  return RingElement::reduced(p.ring, std::move(lifted));
}

// [round(t x / q)]_q of an exact lifted product.
RingElement rescale(const ParamSet& p, std::vector<BigInt> lifted) {
  RingElement scaled = scale_round(RingElement::lifted(p.ring, std::move(lifted)), p.t, p.q());
  return ring_reduce(scaled);
}

}  // namespace

// ---------------------------------------------------------------------------
// Keys and ciphertexts

SecretKey::SecretKey(ParamSet params, RingElement s) : params_(std::move(params)), s_(std::move(s)) {
  require_member(params_, s_, "secret key");
  for (const auto& c : s_.coeffs())
    if (c != 0 && c != 1) throw Error(Errc::invalid_parameter, "secret key coefficients must lie in {0, 1}");
  const std::size_t n = params_.n();
  decrypt_primes_ = rns::primes_for_bits(rns::product_bits(2, n, bit_length(params_.q()), bits_of(n) + 1));
  RingElement s2 = ring_mul_lifted(s_, s_);
  s_form_ = std::make_shared<const rns::Form>(rns::forward(s_.coeffs(), decrypt_primes_));
  s2_form_ = std::make_shared<const rns::Form>(rns::forward(s2.coeffs(), decrypt_primes_));
}

PublicKey::PublicKey(ParamSet params, RingElement kp1, RingElement kp2)
    : params_(std::move(params)), kp1_(std::move(kp1)), kp2_(std::move(kp2)) {
  require_member(params_, kp1_, "public key part 1");
  require_member(params_, kp2_, "public key part 2");
  const auto bound_bits = bit_length(BigInt(static_cast<long>(params_.gauss.bound)));
  encrypt_primes_ = rns::primes_for_bits(rns::product_bits(1, params_.n(), bit_length(params_.q()), bound_bits));
  kp1_form_ = std::make_shared<const rns::Form>(rns::forward(kp1_.coeffs(), encrypt_primes_));
  kp2_form_ = std::make_shared<const rns::Form>(rns::forward(kp2_.coeffs(), encrypt_primes_));
}

RelinKey::RelinKey(ParamSet params, std::vector<RelinPair> pairs)
    : params_(std::move(params)), pairs_(std::move(pairs)) {
  if (pairs_.size() != params_.relin_digits())
    throw Error(Errc::parameter_mismatch, "relinearisation key has " + std::to_string(pairs_.size()) +
                                              " pairs, parameters require " + std::to_string(params_.relin_digits()));
  for (const auto& pr : pairs_) {
    require_member(params_, pr.r0, "relinearisation key");
    require_member(params_, pr.r1, "relinearisation key");
  }
  relin_primes_ = rns::primes_for_bits(
      rns::product_bits(pairs_.size(), params_.n(), bit_length(params_.q()), params_.relin_base_log2));
  auto forms = std::make_shared<std::vector<rns::Form>>();
  forms->reserve(2 * pairs_.size());
  for (const auto& pr : pairs_) {
    forms->push_back(rns::forward(pr.r0.coeffs(), relin_primes_));
    forms->push_back(rns::forward(pr.r1.coeffs(), relin_primes_));
  }
  forms_ = std::move(forms);
}

namespace {

std::vector<RingElement> two_parts(RingElement a, RingElement b) {
  std::vector<RingElement> parts;
  parts.reserve(2);
  parts.push_back(std::move(a));
  parts.push_back(std::move(b));
  return parts;
}

}  // namespace

Ciphertext::Ciphertext(ParamSet params, std::vector<RingElement> parts)
    : params_(std::move(params)), parts_(std::move(parts)) {
  if (parts_.size() < 2 || parts_.size() > 3)
    throw Error(Errc::invalid_parameter, "a ciphertext has 2 or 3 parts, got " + std::to_string(parts_.size()));
  for (const auto& p : parts_) require_member(params_, p, "ciphertext part");
}

Ciphertext Ciphertext::trivial_zero(const ParamSet& params) {
  return Ciphertext(params, two_parts(RingElement(params.ring), RingElement(params.ring)));
}

// ---------------------------------------------------------------------------
// Key generation, encryption, decryption

KeySet keygen(const ParamSet& params, RandomSource& rng) {
  const RingParams& ring = params.ring;
  RingElement s = sample_uniform_r2(ring, rng);
  RingElement a = sample_uniform_rq(ring, rng);
  RingElement e = sample_gaussian(ring, params.gauss, rng);
  RingElement kp1 = ring_neg(ring_add(ring_mul(a, s), e));

  SecretKey sk(params, s);
  PublicKey pk(params, kp1, a);

  const RingElement s2 = ring_mul(s, s);
  std::vector<RelinPair> pairs;
  const std::size_t digits = params.relin_digits();
  pairs.reserve(digits);
  for (std::size_t i = 0; i < digits; ++i) {
    RingElement ai = sample_uniform_rq(ring, rng);
    RingElement ei = sample_gaussian(ring, params.gauss, rng);
    RingElement scaled_s2 = ring_scale(s2, pow2(static_cast<unsigned>(i * params.relin_base_log2)));
    RingElement r0 = ring_add(ring_neg(ring_add(ring_mul(ai, s), ei)), scaled_s2);
    pairs.push_back({std::move(r0), std::move(ai)});
  }
  RelinKey rlk(params, std::move(pairs));
  return KeySet{std::move(sk), std::move(pk), std::move(rlk)};
}

Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt, RandomSource& rng) {
  const ParamSet& p = pk.params();
  if (!(pt.poly.params() == p.plaintext_ring()))
    throw Error(Errc::parameter_mismatch, "plaintext does not belong to R_t of the key's parameters");
  const auto g = gaussian_sampler(p.gauss);
  const std::size_t n = p.n();
  const auto u = sample_gaussian_coeffs(n, *g, rng);
  const auto e1 = sample_gaussian_coeffs(n, *g, rng);
  const auto e2 = sample_gaussian_coeffs(n, *g, rng);

  const rns::Form uf = rns::forward(std::span<const std::int64_t>(u), pk.encrypt_primes());
  std::vector<BigInt> c1 = rns::inverse(rns::multiply(pk.kp1_form(), uf));
  std::vector<BigInt> c2 = rns::inverse(rns::multiply(pk.kp2_form(), uf));
  BigInt scaled;
  for (std::size_t j = 0; j < n; ++j) {
    mpz_mul(scaled.get_mpz_t(), p.delta.get_mpz_t(), pt.poly[j].get_mpz_t());
    c1[j] += scaled;
    c1[j] += static_cast<long>(e1[j]);
    c2[j] += static_cast<long>(e2[j]);
  }
  return Ciphertext(p, two_parts(RingElement::reduced(p.ring, std::move(c1)), RingElement::reduced(p.ring, std::move(c2))));
}

RingElement decrypt_phase(const SecretKey& sk, const Ciphertext& ct) {
  const ParamSet& p = sk.params();
  if (!(ct.params() == p)) throw Error(Errc::parameter_mismatch, "ciphertext and secret key use different parameters");
  const std::size_t k = sk.decrypt_primes();
  rns::Form acc = rns::multiply(rns::forward(ct[1].coeffs(), k), sk.s_form());
  if (ct.size() == 3) rns::multiply_accumulate(acc, rns::forward(ct[2].coeffs(), k), sk.s2_form());
  return add_reduce(p, rns::inverse(acc), ct[0]);
}

Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct) {
  const ParamSet& p = sk.params();
  RingElement phase = decrypt_phase(sk, ct);
  RingElement scaled = scale_round(phase, p.t, p.q());
  std::vector<BigInt> coeffs(scaled.coeffs().begin(), scaled.coeffs().end());
  return Plaintext{RingElement::reduced(p.plaintext_ring(), std::move(coeffs))};
}

// ---------------------------------------------------------------------------
// Homomorphic arithmetic

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b) {
  require_same_params(a, b);
  require_two_parts(a);
  require_two_parts(b);
  return Ciphertext(a.params(), two_parts(ring_add(a[0], b[0]), ring_add(a[1], b[1])));
}

Ciphertext he_sub(const Ciphertext& a, const Ciphertext& b) {
  require_same_params(a, b);
  require_two_parts(a);
  require_two_parts(b);
  return Ciphertext(a.params(), two_parts(ring_sub(a[0], b[0]), ring_sub(a[1], b[1])));
}

Ciphertext he_neg(const Ciphertext& a) {
  std::vector<RingElement> parts;
  for (const auto& part : a.parts()) parts.push_back(ring_neg(part));
  return Ciphertext(a.params(), std::move(parts));
}

Ciphertext he_scale(const Ciphertext& a, const BigInt& k) {
  std::vector<RingElement> parts;
  for (const auto& part : a.parts()) parts.push_back(ring_scale(part, k));
  return Ciphertext(a.params(), std::move(parts));
}

Ciphertext he_mul_plain(const Ciphertext& a, const Plaintext& pt) {
  const ParamSet& p = a.params();
  if (!(pt.poly.params() == p.plaintext_ring()))
    throw Error(Errc::parameter_mismatch, "plaintext does not belong to R_t of the ciphertext's parameters");
  std::size_t pt_bits = 0;
  for (const auto& c : pt.poly.coeffs()) pt_bits = std::max(pt_bits, bit_length(c));
  const std::size_t k = rns::primes_for_bits(rns::product_bits(1, p.n(), bit_length(p.q()), pt_bits));
  const rns::Form mf = rns::forward(pt.poly.coeffs(), k);
  std::vector<RingElement> parts;
  for (const auto& part : a.parts())
    parts.push_back(RingElement::reduced(p.ring, rns::inverse(rns::multiply(rns::forward(part.coeffs(), k), mf))));
  return Ciphertext(p, std::move(parts));
}

std::size_t dot_product_primes(const ParamSet& p, std::size_t pairs) {
  const std::size_t bq = bit_length(p.q());
  return rns::primes_for_bits(rns::product_bits(2 * pairs, p.n(), bq, bq));
}

PreparedCiphertext prepare(const Ciphertext& c, std::size_t primes) {
  require_two_parts(c);
  return {rns::forward(c[0].coeffs(), primes), rns::forward(c[1].coeffs(), primes)};
}

Ciphertext he_dot_raw_prepared(const ParamSet& p, std::span<const PreparedCiphertext* const> a,
                               std::span<const PreparedCiphertext* const> b) {
  if (a.size() != b.size()) throw Error(Errc::length_mismatch, "operand counts differ");
  if (a.empty()) throw Error(Errc::empty_input, "product sum over no operands");
  const std::size_t n = p.n();
  const std::size_t k = a[0]->c1.primes();
  if (k < dot_product_primes(p, a.size()))
    throw Error(Errc::invalid_parameter, "prepared operands carry too few primes for this sum");
  rns::Form acc0(n, k), acc1(n, k), acc2(n, k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    rns::multiply_accumulate(acc0, a[i]->c1, b[i]->c1);
    rns::multiply_accumulate(acc1, a[i]->c1, b[i]->c2);
    rns::multiply_accumulate(acc1, a[i]->c2, b[i]->c1);
    rns::multiply_accumulate(acc2, a[i]->c2, b[i]->c2);
  }
  return Ciphertext(p, {rescale(p, rns::inverse(acc0)), rescale(p, rns::inverse(acc1)), rescale(p, rns::inverse(acc2))});
}

Ciphertext he_dot_raw(std::span<const Ciphertext> a, std::span<const Ciphertext> b) {
  if (a.size() != b.size()) throw Error(Errc::length_mismatch, "operand counts differ");
  if (a.empty()) throw Error(Errc::empty_input, "product sum over no operands");
  const ParamSet& p = a[0].params();
  for (std::size_t i = 0; i < a.size(); ++i) {
    require_same_params(a[0], a[i]);
    require_same_params(a[0], b[i]);
    require_two_parts(a[i]);
    require_two_parts(b[i]);
  }
  const std::size_t k = dot_product_primes(p, a.size());
  std::vector<PreparedCiphertext> fa, fb;
  fa.reserve(a.size());
  fb.reserve(b.size());
  std::vector<const PreparedCiphertext*> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    fa.push_back(prepare(a[i], k));
    fb.push_back(prepare(b[i], k));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa.push_back(&fa[i]);
    pb.push_back(&fb[i]);
  }
  return he_dot_raw_prepared(p, pa, pb);
}

Ciphertext he_mul_raw(const Ciphertext& a, const Ciphertext& b) {
  return he_dot_raw(std::span<const Ciphertext>(&a, 1), std::span<const Ciphertext>(&b, 1));
}

Ciphertext relinearise(const Ciphertext& c, const RelinKey& rk) {
  if (c.size() != 3)
    throw Error(Errc::nothing_to_relinearise, "relinearisation needs a 3-part ciphertext, got " +
                                                  std::to_string(c.size()) + " parts");
  const ParamSet& p = c.params();
  if (!(rk.params() == p)) throw Error(Errc::parameter_mismatch, "relinearisation key uses different parameters");

  const std::size_t n = p.n();
  const std::size_t digits = rk.pairs().size();
  const unsigned w = p.relin_base_log2;
  const std::uint64_t mask = (std::uint64_t{1} << w) - 1;

  // Non-negative base-2^w digits of the canonical representative in [0, q).
  std::vector<std::vector<std::int64_t>> dig(digits, std::vector<std::int64_t>(n));
  BigInt v;
  for (std::size_t j = 0; j < n; ++j) {
    v = c[2][j];
    if (sgn(v) < 0) v += p.q();
    mpz_srcptr z = v.get_mpz_t();
    for (std::size_t i = 0; i < digits; ++i) {
      const std::size_t bit = i * w;
      const std::size_t limb = bit / 64, shift = bit % 64;
      std::uint64_t x = mpz_getlimbn(z, static_cast<mp_size_t>(limb)) >> shift;
      if (shift + w > 64 && shift != 0) x |= mpz_getlimbn(z, static_cast<mp_size_t>(limb + 1)) << (64 - shift);
      dig[i][j] = static_cast<std::int64_t>(x & mask);
    }
  }

  const std::size_t k = rk.relin_primes();
  rns::Form acc0(n, k), acc1(n, k);
  for (std::size_t i = 0; i < digits; ++i) {
    const rns::Form df = rns::forward(std::span<const std::int64_t>(dig[i]), k);
    rns::multiply_accumulate(acc0, rk.r0_form(i), df);
    rns::multiply_accumulate(acc1, rk.r1_form(i), df);
  }
  return Ciphertext(p, {add_reduce(p, rns::inverse(acc0), c[0]), add_reduce(p, rns::inverse(acc1), c[1])});
}

Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b, const RelinKey& rk) {
  return relinearise(he_mul_raw(a, b), rk);
}

}  // namespace hefv
