// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "hefv/encoding.hpp"
#include "hefv/error.hpp"
#include "hefv/noise.hpp"
#include "hefv/scheme.hpp"
#include "support.hpp"

namespace hefv {
namespace {

using testing::Poly;

class ToyScheme : public ::testing::Test {
 protected:
  ParamSet p = testing::toy_params();
  const KeySet& ks = testing::keys_for(p);
  RandomSource rng = RandomSource::seeded_hex("5eed");
  std::mt19937_64 gen{42};

  Ciphertext enc_poly(const Poly& m) { return encrypt(ks.pk, testing::plaintext_of(m, p), rng); }
  Ciphertext enc_int(long m) { return encrypt(ks.pk, encode_int(m, p), rng); }
  Poly dec(const Ciphertext& c) { return testing::coeffs_of(decrypt(ks.sk, c)); }
  Poly random_msg() { return testing::random_poly(gen, p.n(), p.t); }
};

void expect_code(const std::function<void()>& f, Errc code) {
  try {
    f();
    FAIL() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST_F(ToyScheme, KeyStructure) {
  for (const auto& c : ks.sk.poly().coeffs()) EXPECT_TRUE(c == 0 || c == 1);
  // kp1 + kp2 s = -e with |e| <= B.
  const Poly s = testing::coeffs_of(ks.sk.poly());
  const Poly kp1 = testing::coeffs_of(ks.pk.kp1()), kp2 = testing::coeffs_of(ks.pk.kp2());
  const Poly prod = testing::oracle_negacyclic(kp2, s);
  for (std::size_t j = 0; j < p.n(); ++j) EXPECT_LE(abs(testing::centered_mod(kp1[j] + prod[j], p.q())), 40);
  // r0_i + r1_i s - 2^(w i) s^2 is bounded by B.
  const Poly s2 = testing::oracle_negacyclic(s, s);
  ASSERT_EQ(ks.rlk.pairs().size(), 40u / 8 + 1);  // l = floor(log_T q), T = 2^8
  for (std::size_t i = 0; i < ks.rlk.pairs().size(); ++i) {
    const Poly r0 = testing::coeffs_of(ks.rlk.pairs()[i].r0), r1 = testing::coeffs_of(ks.rlk.pairs()[i].r1);
    const Poly r1s = testing::oracle_negacyclic(r1, s);
    for (std::size_t j = 0; j < p.n(); ++j) {
      const mpz_class v = r0[j] + r1s[j] - (mpz_class(1) << (8 * i)) * s2[j];
      EXPECT_LE(abs(testing::centered_mod(v, p.q())), 40);
    }
  }
}

TEST_F(ToyScheme, WrongSecretBreaksKeyRelation) {
  const Poly kp1 = testing::coeffs_of(ks.pk.kp1()), kp2 = testing::coeffs_of(ks.pk.kp2());
  int over = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Poly s(p.n());
    for (auto& c : s) c = static_cast<long>(gen() & 1);
    if (s == testing::coeffs_of(ks.sk.poly())) continue;
    const Poly prod = testing::oracle_negacyclic(kp2, s);
    mpz_class worst = 0;
    for (std::size_t j = 0; j < p.n(); ++j) worst = std::max<mpz_class>(worst, abs(testing::centered_mod(kp1[j] + prod[j], p.q())));
    over += worst > 40;
  }
  EXPECT_GE(over, 99);
}

TEST_F(ToyScheme, FreshKeysDiffer) {
  RandomSource a = RandomSource::cryptographic(), b = RandomSource::cryptographic();
  EXPECT_FALSE(keygen(p, a).pk == keygen(p, b).pk);
}

TEST_F(ToyScheme, RoundTrip) {
  EXPECT_EQ(dec(enc_poly(Poly(p.n(), 0))), Poly(p.n(), 0));
  for (int i = 0; i < 500; ++i) {
    const Poly m = random_msg();
    EXPECT_EQ(dec(enc_poly(m)), m);
  }
}

TEST_F(ToyScheme, EncryptionIsRandomised) {
  const Poly m = random_msg();
  const Ciphertext a = enc_poly(m), b = enc_poly(m);
  EXPECT_FALSE(a == b);
  EXPECT_EQ(dec(a), dec(b));
}

TEST_F(ToyScheme, ZeroCiphertextDecryptsToZero) {
  EXPECT_EQ(dec(Ciphertext::trivial_zero(p)), Poly(p.n(), 0));
  const Ciphertext z3(p, {RingElement(p.ring), RingElement(p.ring), RingElement(p.ring)});
  EXPECT_EQ(dec(z3), Poly(p.n(), 0));
}

TEST_F(ToyScheme, AdditionAndSubtraction) {
  EXPECT_EQ(decode_int(decrypt(ks.sk, he_add(enc_int(42), enc_int(7)))), 49);
  EXPECT_EQ(decode_int(decrypt(ks.sk, he_sub(enc_int(42), enc_int(7)))), 35);
  EXPECT_EQ(decode_int(decrypt(ks.sk, he_sub(enc_int(5), enc_int(9)))), -4);
  for (int i = 0; i < 100; ++i) {
    const Poly a = random_msg(), b = random_msg();
    const Ciphertext ca = enc_poly(a), cb = enc_poly(b);
    EXPECT_EQ(dec(he_add(ca, cb)), testing::plain_add(a, b, p.t));
    EXPECT_EQ(dec(he_sub(ca, cb)), testing::plain_sub(a, b, p.t));
    EXPECT_EQ(dec(he_add(ca, enc_poly(Poly(p.n(), 0)))), a);
    EXPECT_EQ(dec(he_sub(ca, ca)), Poly(p.n(), 0));
    EXPECT_EQ(dec(he_neg(ca)), testing::plain_sub(Poly(p.n(), 0), a, p.t));
  }
}

TEST_F(ToyScheme, ScaleAndPlainMultiply) {
  for (int i = 0; i < 50; ++i) {
    const Poly a = random_msg(), w = random_msg();
    const long k = static_cast<long>(gen() % 7) - 3;
    Poly want(p.n());
    for (std::size_t j = 0; j < p.n(); ++j) want[j] = testing::centered_mod(a[j] * k, p.t);
    EXPECT_EQ(dec(he_scale(enc_poly(a), k)), want);
    EXPECT_EQ(dec(he_mul_plain(enc_poly(a), testing::plaintext_of(w, p))), testing::plain_mul(a, w, p.t));
  }
}

TEST_F(ToyScheme, RawProductDecryptsWithThreeParts) {
  const Ciphertext raw = he_mul_raw(enc_int(6), enc_int(7));
  EXPECT_EQ(raw.size(), 3u);
  EXPECT_EQ(decode_int(decrypt(ks.sk, raw)), 42);
  for (int i = 0; i < 100; ++i) {
    const Poly a = random_msg(), b = random_msg();
    const Ciphertext r = he_mul_raw(enc_poly(a), enc_poly(b));
    EXPECT_EQ(dec(r), testing::plain_mul(a, b, p.t));
    EXPECT_EQ(dec(relinearise(r, ks.rlk)), dec(r));
  }
  Poly one(p.n(), 0);
  one[0] = 1;
  const Poly m = random_msg();
  EXPECT_EQ(dec(he_mul_raw(enc_poly(m), enc_poly(one))), m);
  EXPECT_EQ(dec(he_mul_raw(enc_poly(m), enc_poly(Poly(p.n(), 0)))), Poly(p.n(), 0));
}

TEST_F(ToyScheme, MultiplicationIsAssociativeWithinBudget) {
  for (int i = 0; i < 30; ++i) {
    const Poly a = random_msg(), b = random_msg(), c = random_msg();
    const Ciphertext ca = enc_poly(a), cb = enc_poly(b), cc = enc_poly(c);
    const Poly left = dec(he_mul(he_mul(ca, cb, ks.rlk), cc, ks.rlk));
    const Poly right = dec(he_mul(ca, he_mul(cb, cc, ks.rlk), ks.rlk));
    EXPECT_EQ(left, right);
    EXPECT_EQ(left, testing::plain_mul(testing::plain_mul(a, b, p.t), c, p.t));
  }
}

TEST_F(ToyScheme, DotProductMatchesSumOfProducts) {
  std::vector<Ciphertext> xs, ys;
  Poly want(p.n(), 0);
  for (int i = 0; i < 6; ++i) {
    const Poly a = random_msg(), b = random_msg();
    xs.push_back(enc_poly(a));
    ys.push_back(enc_poly(b));
    want = testing::plain_add(want, testing::plain_mul(a, b, p.t), p.t);
  }
  EXPECT_EQ(dec(he_dot_raw(xs, ys)), want);
  EXPECT_EQ(he_dot_raw(std::span(xs).first(1), std::span(ys).first(1)), he_mul_raw(xs[0], ys[0]));
}

TEST_F(ToyScheme, ErrorCodes) {
  const Ciphertext a = enc_int(3);
  const Ciphertext raw = he_mul_raw(a, a);
  expect_code([&] { he_add(raw, a); }, Errc::unrelinearised_operand);
  expect_code([&] { he_mul(raw, a, ks.rlk); }, Errc::unrelinearised_operand);
  expect_code([&] { relinearise(a, ks.rlk); }, Errc::nothing_to_relinearise);
  ParamOverrides o;
  o.d = 4;
  o.q = mpz_class(1) << 40;
  o.t = 32;
  o.sigma = 4.0;
  o.relin_base_log2 = 8;
  const ParamSet other = make_params(o);
  const KeySet& ok = testing::keys_for(other);
  RandomSource r2 = RandomSource::seeded_hex("77");
  const Ciphertext b = encrypt(ok.pk, encode_int(3, other), r2);
  expect_code([&] { he_add(a, b); }, Errc::parameter_mismatch);
  expect_code([&] { encrypt(ks.pk, encode_int(3, other), rng); }, Errc::parameter_mismatch);
  expect_code([&] { decrypt(ks.sk, b); }, Errc::parameter_mismatch);
  expect_code([&] { relinearise(he_mul_raw(b, b), ks.rlk); }, Errc::parameter_mismatch);
  expect_code([&] { Ciphertext(p, {RingElement(p.ring)}); }, Errc::invalid_parameter);
  expect_code([&] { SecretKey(p, RingElement::reduced(p.ring, Poly(p.n(), 2))); }, Errc::invalid_parameter);
}

// A variant that reduces the products modulo q first must break decryption,
// while the exact variant reproduces the library bit for bit.
TEST_F(ToyScheme, ReducingBeforeRescalingBreaksMultiplication) {
  int exact_ok = 0, mutated_ok = 0;
  const int trials = 100;
  for (int i = 0; i < trials; ++i) {
    const Poly a = random_msg(), b = random_msg();
    const Ciphertext ca = enc_poly(a), cb = enc_poly(b);
    const Poly want = testing::plain_mul(a, b, p.t);
    const Ciphertext exact = testing::mul_raw_variant(ca, cb, false);
    EXPECT_EQ(exact, he_mul_raw(ca, cb));
    exact_ok += dec(exact) == want;
    mutated_ok += dec(testing::mul_raw_variant(ca, cb, true)) == want;
  }
  EXPECT_EQ(exact_ok, trials);
  EXPECT_LT(mutated_ok, trials / 10);
}

TEST_F(ToyScheme, NoiseBudgetBehaviour) {
  const Plaintext m = encode_int(11, p);
  const Ciphertext c = encrypt(ks.pk, m, rng);
  const double fresh = noise_budget(c, ks.sk, m);
  const double floor = std::log2(p.delta.get_d() / (2.0 * fresh_noise_bound(p).get_d()));
  EXPECT_GE(fresh, floor - 1);
  const Ciphertext d = encrypt(ks.pk, encode_int(5, p), rng);
  const Plaintext sum = testing::plaintext_of(
      testing::plain_add(testing::coeffs_of(m), testing::coeffs_of(encode_int(5, p)), p.t), p);
  const double sum_budget = noise_budget(he_add(c, d), ks.sk, sum);
  EXPECT_GE(sum_budget, std::min(fresh, noise_budget(d, ks.sk, encode_int(5, p))) - 1.1);
  const Ciphertext prod = he_mul(c, d, ks.rlk);
  EXPECT_LT(noise_budget(prod, ks.sk, decrypt(ks.sk, prod)), fresh);
  EXPECT_THROW(noise_budget(c, ks.sk, Plaintext{RingElement(RingParams::make(3, 16))}), Error);
}

// With t dividing q the noise of a sum is exactly the sum of the noises, so
// the measured budget can rise when the noises partly cancel.
TEST_F(ToyScheme, NoiseOfSumIsSumOfNoises) {
  int rose = 0;
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_msg(), b = random_msg();
    const Ciphertext ca = enc_poly(a), cb = enc_poly(b);
    const Plaintext ma = testing::plaintext_of(a, p), mb = testing::plaintext_of(b, p);
    const Plaintext sum = testing::plaintext_of(testing::plain_add(a, b, p.t), p);
    const Poly ea = testing::coeffs_of(noise_term(ca, ks.sk, ma)), eb = testing::coeffs_of(noise_term(cb, ks.sk, mb));
    const Poly es = testing::coeffs_of(noise_term(he_add(ca, cb), ks.sk, sum));
    for (std::size_t j = 0; j < p.n(); ++j) EXPECT_EQ(es[j], ea[j] + eb[j]);
    const double bs = noise_budget(he_add(ca, cb), ks.sk, sum);
    rose += bs > std::max(noise_budget(ca, ks.sk, ma), noise_budget(cb, ks.sk, mb));
  }
  EXPECT_GT(rose, 0);
  const Ciphertext c = enc_poly(random_msg());
  EXPECT_TRUE(noise_term(he_sub(c, c), ks.sk, Plaintext{RingElement(p.plaintext_ring())}).is_zero());
}

TEST_F(ToyScheme, RelinearisationNoiseGrowthIsBounded) {
  const double n = static_cast<double>(p.n());
  const double bound = std::log2(n * p.relin_digits() * std::ldexp(1.0, p.relin_base_log2) * p.gauss.bound) + 1;
  for (int i = 0; i < 50; ++i) {
    const Ciphertext raw = he_mul_raw(enc_poly(random_msg()), enc_poly(random_msg()));
    const Plaintext m = decrypt(ks.sk, raw);
    const double before = noise_budget(raw, ks.sk, m);
    const double after = noise_budget(relinearise(raw, ks.rlk), ks.sk, m);
    EXPECT_LE(before - after, bound);
  }
}

TEST(DefaultScheme, RoundTripAndProduct) {
  const ParamSet p = default_params();
  const KeySet& ks = testing::keys_for(p);
  RandomSource rng = RandomSource::seeded_hex("d0");
  const Plaintext m = encode_int(42, p);
  const Ciphertext c = encrypt(ks.pk, m, rng);
  EXPECT_EQ(decrypt(ks.sk, c), m);
  const double fresh = noise_budget(c, ks.sk, m);
  EXPECT_GE(fresh, std::log2(std::ldexp(1.0, 113) / (2.0 * 160 * 8193)) - 1);
  const Ciphertext prod = he_mul(c, encrypt(ks.pk, encode_int(7, p), rng), ks.rlk);
  EXPECT_EQ(decode_int(decrypt(ks.sk, prod)), 294);
  EXPECT_LT(noise_budget(prod, ks.sk, decrypt(ks.sk, prod)), fresh);
}

}  // namespace
}  // namespace hefv
