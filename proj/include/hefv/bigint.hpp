// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace hefv {

// Unbounded signed integer. All coefficient arithmetic is exact.
using BigInt = mpz_class;

// Number of bits in |x|; 0 for x == 0.
std::size_t bit_length(const BigInt& x);

BigInt pow2(unsigned k);

// log2|x| in double precision; -inf for 0.
double log2_abs(const BigInt& x);

// Accepts an optional sign followed by decimal digits, or the form "2^k".
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& x);

}  // namespace hefv
