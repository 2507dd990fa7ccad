// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Exact negacyclic products of big-integer polynomials through a residue
// number system of NTT-friendly 61-bit primes.
//
// A Form holds a polynomial as k residue vectors, each already transformed
// to the NTT domain, so products and sums of products are pointwise. When the
// prime product P exceeds twice the largest possible |coefficient|, the
// inverse transform followed by CRT reconstruction into (-P/2, P/2] recovers
// the exact integer result.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hefv/bigint.hpp"

namespace hefv::rns {

// Primes p < 2^61 with p = 1 (mod 2^18), in decreasing order.
std::span<const std::uint64_t> prime_pool();

// Smallest k such that the product of the first k pool primes exceeds 2^bits.
std::size_t primes_for_bits(std::size_t bits);

// Bits needed to represent sums of `terms` products of polynomials of length n
// whose coefficients are bounded by 2^bits_a and 2^bits_b, with sign.
std::size_t product_bits(std::size_t terms, std::size_t n, std::size_t bits_a, std::size_t bits_b);

class Form {
 public:
  Form() = default;
  Form(std::size_t n, std::size_t primes);  // zero

  std::size_t n() const { return n_; }
  std::size_t primes() const { return k_; }
  std::span<std::uint64_t> residues(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const std::uint64_t> residues(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::uint64_t> data_;
};

// Forward transform of integer coefficients (any sign, any size).
Form forward(std::span<const BigInt> coeffs, std::size_t primes);
Form forward(std::span<const std::int64_t> coeffs, std::size_t primes);

// acc += a * b (pointwise in the NTT domain). All three must agree in n and k.
void multiply_accumulate(Form& acc, const Form& a, const Form& b);
Form multiply(const Form& a, const Form& b);
void add_to(Form& acc, const Form& a);

// Inverse transform and CRT reconstruction; coefficients in (-P/2, P/2].
std::vector<BigInt> inverse(const Form& f);

// Forward then inverse with a single prime set; exposed for tests and benchmarks.
std::vector<BigInt> negacyclic_product(std::span<const BigInt> a, std::span<const BigInt> b);

}  // namespace hefv::rns
