// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace hefv::testing {

ParamSet toy_params() {
  ParamOverrides o;
  o.d = 4;
  o.q = mpz_class(1) << 40;
  o.t = 16;
  o.sigma = 4.0;
  o.relin_base_log2 = 8;
  return make_params(o);
}

ParamSet small_params() {
  ParamOverrides o;
  o.d = 6;
  o.q = mpz_class(1) << 100;
  o.sigma = 4.0;
  o.relin_base_log2 = 20;
  return make_params(o);
}

mpz_class centered_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());  // [0, m)
  if (2 * r > m) r -= m;
  return r;
}

Poly oracle_negacyclic(const Poly& a, const Poly& b) {
  const std::size_t n = a.size();
  Poly out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i + j < n)
        out[i + j] += a[i] * b[j];
      else
        out[i + j - n] -= a[i] * b[j];
    }
  return out;
}

Poly plain_add(const Poly& a, const Poly& b, const mpz_class& t) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = centered_mod(a[i] + b[i], t);
  return out;
}

Poly plain_sub(const Poly& a, const Poly& b, const mpz_class& t) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = centered_mod(a[i] - b[i], t);
  return out;
}

Poly plain_mul(const Poly& a, const Poly& b, const mpz_class& t) {
  Poly out = oracle_negacyclic(a, b);
  for (auto& c : out) c = centered_mod(c, t);
  return out;
}

Poly signed_bits(const mpz_class& m, std::size_t n, const mpz_class& t) {
  Poly out(n, 0);
  mpz_class v = abs(m);
  const int sign = m < 0 ? -1 : 1;
  for (std::size_t i = 0; i < n && v != 0; ++i) {
    if (v % 2 != 0) out[i] = centered_mod(mpz_class(sign), t);
    v /= 2;
  }
  return out;
}

Poly coeffs_of(const RingElement& e) { return Poly(e.coeffs().begin(), e.coeffs().end()); }
Poly coeffs_of(const Plaintext& p) { return coeffs_of(p.poly); }

Plaintext plaintext_of(const Poly& coeffs, const ParamSet& p) {
  return Plaintext{RingElement::reduced(p.plaintext_ring(), coeffs)};
}

mpz_class random_between(std::mt19937_64& gen, const mpz_class& lo, const mpz_class& hi) {
  const mpz_class span = hi - lo + 1;
  const std::size_t words = mpz_sizeinbase(span.get_mpz_t(), 2) / 64 + 2;
  mpz_class acc = 0;
  for (std::size_t i = 0; i < words; ++i) {
    acc <<= 64;
    acc += mpz_class(std::to_string(gen()));
  }
  return lo + acc % span;
}

Poly random_poly(std::mt19937_64& gen, std::size_t n, const mpz_class& modulus) {
  Poly out(n);
  for (auto& c : out) c = centered_mod(random_between(gen, 0, modulus - 1), modulus);
  return out;
}

const KeySet& keys_for(const ParamSet& p) {
  static std::mutex guard;
  static std::map<std::string, std::unique_ptr<KeySet>> cache;
  std::lock_guard<std::mutex> lock(guard);
  const std::string key = std::to_string(p.d()) + "/" + p.q().get_str() + "/" + p.t.get_str() + "/" +
                          std::to_string(p.gauss.sigma) + "/" + std::to_string(p.gauss.bound) + "/" +
                          std::to_string(p.relin_base_log2);
  auto& slot = cache[key];
  if (!slot) {
    RandomSource rng = RandomSource::seeded_hex("74657374206b657973");
    slot = std::make_unique<KeySet>(keygen(p, rng));
  }
  return *slot;
}

Ciphertext mul_raw_variant(const Ciphertext& a, const Ciphertext& b, bool reduce_first) {
  const ParamSet& p = a.params();
  auto product = [&](const RingElement& x, const RingElement& y) {
    return reduce_first ? ring_mul(x, y) : ring_mul_lifted(x, y);
  };
  auto rescale = [&](const RingElement& x) { return ring_reduce(scale_round(x, p.t, p.q())); };
  auto lifted_sum = [&](const RingElement& x, const RingElement& y) {
    std::vector<BigInt> c(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) c[j] = x[j] + y[j];
    return RingElement::lifted(p.ring, std::move(c));
  };
  return Ciphertext(p, {rescale(product(a[0], b[0])), rescale(lifted_sum(product(a[0], b[1]), product(a[1], b[0]))),
                        rescale(product(a[1], b[1]))});
}

}  // namespace hefv::testing
