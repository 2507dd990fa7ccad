// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Independent oracles and fixtures shared by the test binaries. The oracles
// never call the library's arithmetic; they are written directly over gmpxx
// integers so that they can catch library bugs.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "hefv/params.hpp"
#include "hefv/scheme.hpp"

namespace hefv::testing {

using Poly = std::vector<mpz_class>;

// n = 8, q = 2^40, t = 16, sigma = 4, B = 40, w = 8.
ParamSet toy_params();

// n = 32, q = 2^100, t = 2^15, sigma = 4, B = 40, w = 20: small enough for fast
// tests, with a plaintext modulus wide enough for integer arithmetic.
ParamSet small_params();

// r in (-m/2, m/2] with r = a mod m, by plain floor division.
mpz_class centered_mod(const mpz_class& a, const mpz_class& m);

// O(n^2) negacyclic convolution over Z.
Poly oracle_negacyclic(const Poly& a, const Poly& b);

// Polynomial arithmetic in R_t with centered coefficients.
Poly plain_add(const Poly& a, const Poly& b, const mpz_class& t);
Poly plain_sub(const Poly& a, const Poly& b, const mpz_class& t);
Poly plain_mul(const Poly& a, const Poly& b, const mpz_class& t);

// Binary digits of |m| with the sign of m; the oracle for integer encoding.
Poly signed_bits(const mpz_class& m, std::size_t n, const mpz_class& t);

Poly coeffs_of(const RingElement& e);
Poly coeffs_of(const Plaintext& p);
Plaintext plaintext_of(const Poly& coeffs, const ParamSet& p);

// Uniform integer in [lo, hi].
mpz_class random_between(std::mt19937_64& gen, const mpz_class& lo, const mpz_class& hi);
Poly random_poly(std::mt19937_64& gen, std::size_t n, const mpz_class& modulus);  // centered

// Three-part product rebuilt from ring primitives. With reduce_first the
// products are reduced modulo q before rescaling, which is the wrong algorithm.
Ciphertext mul_raw_variant(const Ciphertext& a, const Ciphertext& b, bool reduce_first);

// Fixed-seed key set per parameter set, built once per process.
const KeySet& keys_for(const ParamSet& p);

}  // namespace hefv::testing
