// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/ring.hpp"

#include <algorithm>
#include <utility>

#include "hefv/error.hpp"
#include "hefv/rns.hpp"

namespace hefv {
namespace {

constexpr std::size_t kSchoolbookMaxN = 32;

void require_same(const RingElement& a, const RingElement& b) {
  if (!(a.params() == b.params()))
    throw Error(Errc::parameter_mismatch, "ring elements belong to different rings");
}

void require_modulus(const BigInt& q) {
  if (q < 2) throw Error(Errc::invalid_modulus, "modulus must be at least 2, got " + to_string(q));
}

// In-place centered reduction; half = floor(q/2).
void reduce_in_place(BigInt& a, const BigInt& q, const BigInt& half) {
  mpz_ptr x = a.get_mpz_t();
  mpz_srcptr m = q.get_mpz_t();
  mpz_srcptr h = half.get_mpz_t();
  const int c = mpz_cmpabs(x, h);
  if (c < 0) return;
  if (c == 0 && (mpz_sgn(x) > 0 || mpz_odd_p(m))) return;
  mpz_fdiv_r(x, x, m);
  if (mpz_cmp(x, h) > 0) mpz_sub(x, x, m);
}

// Reduction of a sum or difference of two centered values, |a| < q.
void reduce_near(BigInt& a, const BigInt& q, const BigInt& half) {
  mpz_ptr x = a.get_mpz_t();
  if (mpz_cmpabs(x, half.get_mpz_t()) < 0) return;
  if (mpz_sgn(x) > 0)
    mpz_sub(x, x, q.get_mpz_t());
  else
    mpz_add(x, x, q.get_mpz_t());
  reduce_in_place(a, q, half);
}

// a op b for two reduced operands, or the general reduction otherwise.
template <typename Op>
RingElement combine(const RingElement& a, const RingElement& b, Op op) {
  require_same(a, b);
  const BigInt& q = a.params().q;
  std::vector<BigInt> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) op(out[i].get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  if (!a.is_reduced() || !b.is_reduced()) return RingElement::reduced(a.params(), std::move(out));
  const BigInt half = q / 2;
  for (auto& c : out) reduce_near(c, q, half);
  return RingElement::trusted_reduced(a.params(), std::move(out));
}

}  // namespace

RingParams RingParams::make(int d, const BigInt& q) {
  if (d < 1 || d > 18) throw Error(Errc::invalid_parameter, "d must lie in [1, 18]");
  require_modulus(q);
  return RingParams{d, std::size_t{1} << (d - 1), q};
}

BigInt centered_reduce(const BigInt& a, const BigInt& q) {
  require_modulus(q);
  BigInt r = a;
  reduce_in_place(r, q, BigInt(q / 2));
  return r;
}

RingElement::RingElement(RingParams params)
    : params_(std::move(params)), coeffs_(params_.n), reduced_(true) {}

RingElement::RingElement(RingParams params, std::vector<BigInt> coeffs, bool reduced)
    : params_(std::move(params)), coeffs_(std::move(coeffs)), reduced_(reduced) {
  if (coeffs_.size() != params_.n)
    throw Error(Errc::parameter_mismatch, "coefficient count " + std::to_string(coeffs_.size()) +
                                              " does not match ring length " + std::to_string(params_.n));
}

RingElement RingElement::reduced(RingParams params, std::vector<BigInt> coeffs) {
  require_modulus(params.q);
  const BigInt half = params.q / 2;
  for (auto& c : coeffs) reduce_in_place(c, params.q, half);
  return RingElement(std::move(params), std::move(coeffs), true);
}

RingElement RingElement::lifted(RingParams params, std::vector<BigInt> coeffs) {
  return RingElement(std::move(params), std::move(coeffs), false);
}

RingElement RingElement::trusted_reduced(RingParams params, std::vector<BigInt> coeffs) {
  return RingElement(std::move(params), std::move(coeffs), true);
}

bool RingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return sgn(c) == 0; });
}

RingElement ring_reduce(const RingElement& a) {
  if (a.is_reduced()) return a;
  return RingElement::reduced(a.params(), {a.coeffs().begin(), a.coeffs().end()});
}

RingElement ring_add(const RingElement& a, const RingElement& b) { return combine(a, b, mpz_add); }

RingElement ring_sub(const RingElement& a, const RingElement& b) { return combine(a, b, mpz_sub); }

RingElement ring_neg(const RingElement& a) {
  std::vector<BigInt> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_neg(out[i].get_mpz_t(), a[i].get_mpz_t());
  return RingElement::reduced(a.params(), std::move(out));
}

RingElement ring_scale(const RingElement& a, const BigInt& k) {
  std::vector<BigInt> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_mul(out[i].get_mpz_t(), a[i].get_mpz_t(), k.get_mpz_t());
  return RingElement::reduced(a.params(), std::move(out));
}

RingElement ring_mul_lifted(const RingElement& a, const RingElement& b, MulAlgorithm alg) {
  require_same(a, b);
  if (alg == MulAlgorithm::automatic)
    alg = a.size() <= kSchoolbookMaxN ? MulAlgorithm::schoolbook : MulAlgorithm::ntt;
  std::vector<BigInt> out = alg == MulAlgorithm::schoolbook
                                ? reference::negacyclic_schoolbook(a.coeffs(), b.coeffs())
                                : rns::negacyclic_product(a.coeffs(), b.coeffs());
  return RingElement::lifted(a.params(), std::move(out));
}

RingElement ring_mul(const RingElement& a, const RingElement& b, MulAlgorithm alg) {
  return ring_reduce(ring_mul_lifted(a, b, alg));
}

BigInt round_div(const BigInt& num, const BigInt& den) {
  // floor((2 num + den) / (2 den))
  BigInt twice = num * 2 + den;
  BigInt out;
  BigInt den2 = den * 2;
  mpz_fdiv_q(out.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
  return out;
}

RingElement scale_round(const RingElement& a, const BigInt& t, const BigInt& q) {
  if (t < 2) throw Error(Errc::invalid_modulus, "scale numerator t must be at least 2");
  require_modulus(q);
  const BigInt two_q = q * 2;
  std::vector<BigInt> out(a.size());
  BigInt tmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_mul(tmp.get_mpz_t(), a[i].get_mpz_t(), t.get_mpz_t());
    mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(), 1);
    mpz_add(tmp.get_mpz_t(), tmp.get_mpz_t(), q.get_mpz_t());
    mpz_fdiv_q(out[i].get_mpz_t(), tmp.get_mpz_t(), two_q.get_mpz_t());
  }
  return RingElement::lifted(a.params(), std::move(out));
}

BigInt inf_norm(const RingElement& a) {
  BigInt best = 0;
  for (const auto& c : a.coeffs())
    if (mpz_cmpabs(c.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(c);
  return best;
}

namespace reference {

std::vector<BigInt> negacyclic_schoolbook(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.size() != b.size()) throw Error(Errc::parameter_mismatch, "operand lengths differ");
  const std::size_t n = a.size();
  std::vector<BigInt> out(n);
  BigInt prod;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_mul(prod.get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
      const std::size_t k = i + j;
      if (k < n)
        out[k] += prod;
      else
        out[k - n] -= prod;  // x^n = -1
    }
  }
  return out;
}

}  // namespace reference

}  // namespace hefv
