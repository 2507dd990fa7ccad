// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Vectors and matrices of ciphertexts.
//
// Elementwise operations, inner-product terms and matrix cells are
// independent, so every operation taking an Exec may evaluate them in any
// order or concurrently. Exec::serial and Exec::parallel produce bit-identical
// results.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hefv/bigint.hpp"
#include "hefv/parallel.hpp"
#include "hefv/scheme.hpp"

namespace hefv {

class CipherVector {
 public:
  // Throws parameter_mismatch if an element uses other parameters.
  CipherVector(ParamSet params, std::vector<Ciphertext> elems);

  const ParamSet& params() const { return params_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const Ciphertext& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Ciphertext>& elems() const { return elems_; }

  friend bool operator==(const CipherVector&, const CipherVector&) = default;

 private:
  ParamSet params_;
  std::vector<Ciphertext> elems_;
};

// Row-major.
class CipherMatrix {
 public:
  CipherMatrix(ParamSet params, std::size_t rows, std::size_t cols, std::vector<Ciphertext> elems);

  const ParamSet& params() const { return params_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Ciphertext& at(std::size_t r, std::size_t c) const { return elems_[r * cols_ + c]; }
  const std::vector<Ciphertext>& elems() const { return elems_; }

  friend bool operator==(const CipherMatrix&, const CipherMatrix&) = default;

 private:
  ParamSet params_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Ciphertext> elems_;
};

// Each element draws from its own child of rng, split off in index order, so
// the output depends only on the seed and not on the execution mode.
CipherVector encrypt_vector(const PublicKey& pk, std::span<const BigInt> values, RandomSource& rng,
                            Exec exec = Exec::parallel);
std::vector<BigInt> decrypt_vector(const SecretKey& sk, const CipherVector& v, Exec exec = Exec::parallel);

// values is row-major with rows * cols entries.
CipherMatrix encrypt_matrix(const PublicKey& pk, std::size_t rows, std::size_t cols, std::span<const BigInt> values,
                            RandomSource& rng, Exec exec = Exec::parallel);
std::vector<BigInt> decrypt_matrix(const SecretKey& sk, const CipherMatrix& m, Exec exec = Exec::parallel);

enum class ElementOp { add, sub, mul };

CipherVector vec_elementwise(ElementOp op, const CipherVector& a, const CipherVector& b, const RelinKey& rk,
                             Exec exec = Exec::parallel);
CipherMatrix mat_elementwise(ElementOp op, const CipherMatrix& a, const CipherMatrix& b, const RelinKey& rk,
                             Exec exec = Exec::parallel);

// sum_i a_i b_i with one rounding and one relinearisation: depth 1 for any length.
Ciphertext inner_product(const CipherVector& a, const CipherVector& b, const RelinKey& rk,
                         Exec exec = Exec::parallel);

// Every cell is an inner product of a row of a and a column of b.
CipherMatrix mat_mul(const CipherMatrix& a, const CipherMatrix& b, const RelinKey& rk, Exec exec = Exec::parallel);

// Balanced-tree reductions. An empty sum is the trivial zero ciphertext; an
// empty product throws empty_input.
Ciphertext vec_sum(const CipherVector& v, Exec exec = Exec::parallel);
Ciphertext vec_prod(const CipherVector& v, const RelinKey& rk, Exec exec = Exec::parallel);

// Pure rearrangements; no homomorphic cost.
CipherVector diag_extract(const CipherMatrix& m);
CipherMatrix diag_make(const CipherVector& v);  // off-diagonal cells are trivial zeros
CipherMatrix transpose(const CipherMatrix& m);
const Ciphertext& index_get(const CipherVector& v, std::size_t i);
CipherVector index_set(const CipherVector& v, std::size_t i, const Ciphertext& value);
const Ciphertext& index_get(const CipherMatrix& m, std::size_t r, std::size_t c);
CipherMatrix index_set(const CipherMatrix& m, std::size_t r, std::size_t c, const Ciphertext& value);
CipherVector concat(const CipherVector& a, const CipherVector& b);
std::size_t length(const CipherVector& v);
std::pair<std::size_t, std::size_t> dim(const CipherMatrix& m);

}  // namespace hefv
