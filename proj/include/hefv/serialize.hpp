// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Binary object format, all integers little-endian:
//
//   "HEFV" | version u8 (= 1) | kind u8 | params block | payload
//
//   params block: d u8 | q: len u16, len bytes | t: len u16, len bytes |
//                 sigma f64 | B u32 | w u32
//   polynomial:   n coefficients, each the canonical representative in
//                 [0, modulus) in ceil(log2(modulus) / 8) bytes
//
//   payloads:  params      none
//              public key  kp1, kp2
//              secret key  s
//              relin key   count u32, then count pairs r0_i, r1_i
//              ciphertexts count u32, then per ciphertext parts u8 and its
//                          parts as polynomials mod q
//              plaintexts  count u32, then polynomials mod t
//
// Readers reject bad magic, unknown version or kind, truncation, trailing
// bytes, non-minimal integer lengths and out-of-range coefficients with
// corrupt_data.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hefv/params.hpp"
#include "hefv/scheme.hpp"

namespace hefv {

enum class ObjectKind : std::uint8_t {
  params = 0,
  public_key = 1,
  secret_key = 2,
  relin_key = 3,
  ciphertexts = 4,
  plaintexts = 5,
};

using Bytes = std::vector<std::uint8_t>;

// Bytes per coefficient for a modulus.
std::size_t coefficient_width(const BigInt& modulus);

Bytes serialize(const ParamSet& p);
Bytes serialize(const PublicKey& pk);
Bytes serialize(const SecretKey& sk);
Bytes serialize(const RelinKey& rk);
Bytes serialize(std::span<const Ciphertext> cts, const ParamSet& p);
Bytes serialize(std::span<const Plaintext> pts, const ParamSet& p);

// Kind byte of a well-framed object.
ObjectKind peek_kind(std::span<const std::uint8_t> bytes);

ParamSet read_params(std::span<const std::uint8_t> bytes);
PublicKey read_public_key(std::span<const std::uint8_t> bytes);
SecretKey read_secret_key(std::span<const std::uint8_t> bytes);
RelinKey read_relin_key(std::span<const std::uint8_t> bytes);
// The parameter set is returned alongside so that empty vectors keep it.
std::pair<ParamSet, std::vector<Ciphertext>> read_ciphertexts(std::span<const std::uint8_t> bytes);
std::pair<ParamSet, std::vector<Plaintext>> read_plaintexts(std::span<const std::uint8_t> bytes);

// Throw io on failure.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace hefv
