// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "hefv/collections.hpp"
#include "hefv/encoding.hpp"
#include "hefv/error.hpp"
#include "hefv/noise.hpp"
#include "support.hpp"

namespace hefv {
namespace {

using testing::Poly;

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

class Collections : public ::testing::Test {
 protected:
  ParamSet p = testing::small_params();
  const KeySet& ks = testing::keys_for(p);
  RandomSource rng = RandomSource::seeded_hex("c011");
  std::mt19937_64 gen{7};

  CipherVector vec(const std::vector<BigInt>& v) { return encrypt_vector(ks.pk, v, rng); }
  CipherMatrix mat(std::size_t r, std::size_t c, const std::vector<BigInt>& v) {
    return encrypt_matrix(ks.pk, r, c, v, rng);
  }
  std::vector<BigInt> dec(const CipherVector& v) { return decrypt_vector(ks.sk, v); }
  std::vector<BigInt> dec(const CipherMatrix& m) { return decrypt_matrix(ks.sk, m); }
  BigInt dec(const Ciphertext& c) { return decode_int(decrypt(ks.sk, c)); }
  std::vector<BigInt> random_ints(std::size_t n, long lo, long hi) {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(testing::random_between(gen, lo, hi));
    return out;
  }
};

TEST_F(Collections, ElementwiseOnListingVectors) {
  const CipherVector a = vec(ints({42, 34})), b = vec(ints({7, 5}));
  EXPECT_EQ(dec(vec_elementwise(ElementOp::add, a, b, ks.rlk)), ints({49, 39}));
  EXPECT_EQ(dec(vec_elementwise(ElementOp::mul, a, b, ks.rlk)), ints({294, 170}));
  EXPECT_EQ(dec(vec_elementwise(ElementOp::sub, a, b, ks.rlk)), ints({35, 29}));
  EXPECT_EQ(dec(vec_elementwise(ElementOp::add, a, vec(ints({0, 0})), ks.rlk)), ints({42, 34}));
}

TEST_F(Collections, ElementwiseMatchesOracle) {
  const auto x = random_ints(20, -60, 60), y = random_ints(20, -60, 60);
  const CipherVector a = vec(x), b = vec(y);
  const auto s = dec(vec_elementwise(ElementOp::add, a, b, ks.rlk));
  const auto d = dec(vec_elementwise(ElementOp::sub, a, b, ks.rlk));
  const auto m = dec(vec_elementwise(ElementOp::mul, a, b, ks.rlk));
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(s[i], x[i] + y[i]);
    EXPECT_EQ(d[i], x[i] - y[i]);
    EXPECT_EQ(m[i], x[i] * y[i]);
  }
  EXPECT_THROW(vec_elementwise(ElementOp::add, a, vec(ints({1})), ks.rlk), Error);
}

TEST_F(Collections, InnerProduct) {
  EXPECT_EQ(dec(inner_product(vec(ints({1, 2, 3})), vec(ints({4, 5, 6})), ks.rlk)), 32);
  const auto x = random_ints(5, -100, 100);
  const CipherVector a = vec(x);
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<BigInt> e(5, 0);
    e[i] = 1;
    EXPECT_EQ(dec(inner_product(a, vec(e), ks.rlk)), x[i]);
  }
  try {
    inner_product(vec({}), vec({}), ks.rlk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_input);
  }
  EXPECT_THROW(inner_product(a, vec(ints({1})), ks.rlk), Error);
}

TEST_F(Collections, InnerProductHasDepthOne) {
  const std::size_t len = 100;
  const auto x = random_ints(len, 0, 3), y = random_ints(len, 0, 3);
  const CipherVector a = vec(x), b = vec(y);
  const Ciphertext ip = inner_product(a, b, ks.rlk);
  BigInt want = 0;
  for (std::size_t i = 0; i < len; ++i) want += x[i] * y[i];
  EXPECT_EQ(dec(ip), want);

  const Ciphertext single = he_mul(a[0], b[0], ks.rlk);
  const double single_budget = noise_budget(single, ks.sk, decrypt(ks.sk, single));
  const double ip_budget = noise_budget(ip, ks.sk, decrypt(ks.sk, ip));
  EXPECT_GE(ip_budget, single_budget - std::log2(double(len)) - 2);
  const Ciphertext two_levels = he_mul(single, b[1], ks.rlk);
  EXPECT_GT(ip_budget, noise_budget(two_levels, ks.sk, decrypt(ks.sk, two_levels)));
}

TEST_F(Collections, MatrixMultiply) {
  const CipherMatrix a = mat(2, 2, ints({1, 2, 3, 4})), b = mat(2, 2, ints({5, 6, 7, 8}));
  EXPECT_EQ(dec(mat_mul(a, b, ks.rlk)), ints({19, 22, 43, 50}));
  const CipherMatrix id = mat(2, 2, ints({1, 0, 0, 1}));
  EXPECT_EQ(dec(mat_mul(a, id, ks.rlk)), ints({1, 2, 3, 4}));
  const CipherMatrix r = mat(2, 3, ints({1, -2, 3, 0, 5, -1}));
  const CipherMatrix s = mat(3, 1, ints({2, 1, -4}));
  EXPECT_EQ(dec(mat_mul(r, s, ks.rlk)), ints({-12, 9}));
  EXPECT_THROW(mat_mul(a, s, ks.rlk), Error);
}

TEST_F(Collections, RandomTenByTenMatchesOracle) {
  const auto x = random_ints(100, -9, 9), y = random_ints(100, -9, 9);
  const CipherMatrix a = mat(10, 10, x), b = mat(10, 10, y);
  const auto got = dec(mat_mul(a, b, ks.rlk));
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      BigInt want = 0;
      for (int k = 0; k < 10; ++k) want += x[i * 10 + k] * y[k * 10 + j];
      EXPECT_EQ(got[i * 10 + j], want);
    }
  const auto s = dec(mat_elementwise(ElementOp::add, a, b, ks.rlk));
  const auto m = dec(mat_elementwise(ElementOp::mul, a, b, ks.rlk));
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(s[i], x[i] + y[i]);
    EXPECT_EQ(m[i], x[i] * y[i]);
  }
}

TEST_F(Collections, SerialAndParallelAreBitIdentical) {
  const auto x = random_ints(36, -20, 20), y = random_ints(36, -20, 20);
  RandomSource r1 = RandomSource::seeded_hex("99"), r2 = RandomSource::seeded_hex("99");
  const CipherVector vs = encrypt_vector(ks.pk, x, r1, Exec::serial);
  const CipherVector vp = encrypt_vector(ks.pk, x, r2, Exec::parallel);
  ASSERT_EQ(vs, vp);
  const CipherVector w = vec(y);
  for (ElementOp op : {ElementOp::add, ElementOp::sub, ElementOp::mul})
    EXPECT_EQ(vec_elementwise(op, vs, w, ks.rlk, Exec::serial), vec_elementwise(op, vs, w, ks.rlk, Exec::parallel));
  EXPECT_EQ(inner_product(vs, w, ks.rlk, Exec::serial), inner_product(vs, w, ks.rlk, Exec::parallel));
  EXPECT_EQ(vec_sum(vs, Exec::serial), vec_sum(vs, Exec::parallel));
  const CipherMatrix a(p, 6, 6, vs.elems()), b(p, 6, 6, w.elems());
  EXPECT_EQ(mat_mul(a, b, ks.rlk, Exec::serial), mat_mul(a, b, ks.rlk, Exec::parallel));
  EXPECT_EQ(decrypt_vector(ks.sk, vs, Exec::serial), decrypt_vector(ks.sk, vs, Exec::parallel));
  // A cell computed on its own equals the same cell of the full product.
  std::vector<Ciphertext> row, col;
  for (int k = 0; k < 6; ++k) {
    row.push_back(a.at(2, k));
    col.push_back(b.at(k, 4));
  }
  EXPECT_EQ(mat_mul(a, b, ks.rlk).at(2, 4), inner_product(CipherVector(p, row), CipherVector(p, col), ks.rlk));
}

TEST_F(Collections, Reductions) {
  const CipherVector ones = vec(std::vector<BigInt>(100, 1));
  EXPECT_EQ(dec(vec_sum(ones)), 100);
  EXPECT_EQ(dec(vec_sum(vec({}))), 0);
  EXPECT_EQ(vec_sum(vec({})), Ciphertext::trivial_zero(p));
  EXPECT_EQ(dec(vec_prod(vec(ints({2, 3, 4})), ks.rlk)), 24);
  EXPECT_EQ(dec(vec_prod(vec(ints({-7})), ks.rlk)), -7);
  try {
    vec_prod(vec({}), ks.rlk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_input);
  }
}

TEST_F(Collections, BalancedProductBeatsSequentialFold) {
  // Three factors pair up exactly like a fold, so the cases start at four.
  for (const auto& values : {ints({2, 3, 1, 2}), ints({1, 2, 1, 2, 2, 1, 2, 1})}) {
    const CipherVector v = vec(values);
    // Plaintext polynomial of the product of the encodings.
    Poly want = testing::coeffs_of(encode_int(values[0], p));
    for (std::size_t i = 1; i < values.size(); ++i)
      want = testing::plain_mul(want, testing::coeffs_of(encode_int(values[i], p)), p.t);
    const Plaintext m = testing::plaintext_of(want, p);

    const Ciphertext tree = vec_prod(v, ks.rlk);
    Ciphertext fold = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) fold = he_mul(fold, v[i], ks.rlk);
    EXPECT_EQ(decrypt(ks.sk, tree), m);
    EXPECT_GT(noise_budget(tree, ks.sk, m), noise_budget(fold, ks.sk, m));
  }
}

TEST_F(Collections, StructuralOperations) {
  const CipherMatrix m = mat(2, 3, ints({1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(transpose(transpose(m)), m);
  EXPECT_EQ(dec(transpose(m)), ints({1, 4, 2, 5, 3, 6}));
  EXPECT_EQ(dim(transpose(m)), std::make_pair(std::size_t{3}, std::size_t{2}));
  EXPECT_EQ(dec(diag_extract(m)), ints({1, 5}));
  const CipherVector v = vec(ints({7, -8, 9}));
  const CipherMatrix d = diag_make(v);
  EXPECT_EQ(dec(d), ints({7, 0, 0, 0, -8, 0, 0, 0, 9}));
  EXPECT_EQ(diag_extract(d), v);
  EXPECT_EQ(length(v), 3u);
  EXPECT_EQ(dec(index_get(v, 1)), -8);
  EXPECT_EQ(dec(index_set(v, 1, v[2])), ints({7, 9, 9}));
  EXPECT_EQ(dec(index_get(m, 1, 2)), 6);
  EXPECT_EQ(dec(index_set(m, 0, 0, m.at(1, 1))), ints({5, 2, 3, 4, 5, 6}));
  EXPECT_EQ(dec(concat(v, vec(ints({1})))), ints({7, -8, 9, 1}));
  try {
    index_get(v, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::out_of_range);
  }
  EXPECT_THROW(index_get(m, 2, 0), Error);
  EXPECT_THROW(index_set(m, 0, 3, v[0]), Error);
  EXPECT_THROW(CipherMatrix(p, 2, 2, v.elems()), Error);
}

TEST_F(Collections, MixedParametersRejected) {
  const ParamSet toy = testing::toy_params();
  const KeySet& tk = testing::keys_for(toy);
  const CipherVector a = vec(ints({1})), b = encrypt_vector(tk.pk, ints({1}), rng);
  EXPECT_THROW(vec_elementwise(ElementOp::add, a, b, ks.rlk), Error);
  EXPECT_THROW(concat(a, b), Error);
  EXPECT_THROW(CipherVector(p, {a[0], b[0]}), Error);
}

}  // namespace
}  // namespace hefv
