// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/collections.hpp"

#include <optional>

#include "hefv/encoding.hpp"
#include "hefv/error.hpp"

namespace hefv {
namespace {

void require_params(const ParamSet& p, const Ciphertext& c) {
  if (!(c.params() == p)) throw Error(Errc::parameter_mismatch, "collection element uses different parameters");
}

void require_same(const ParamSet& a, const ParamSet& b) {
  if (!(a == b)) throw Error(Errc::parameter_mismatch, "operands use different parameters");
}

Ciphertext apply(ElementOp op, const Ciphertext& a, const Ciphertext& b, const RelinKey& rk) {
  switch (op) {
    case ElementOp::add:
      return he_add(a, b);
    case ElementOp::sub:
      return he_sub(a, b);
    case ElementOp::mul:
      return he_mul(a, b, rk);
  }
  throw Error(Errc::invalid_parameter, "unknown element operation");
}

std::vector<Ciphertext> apply_all(ElementOp op, const std::vector<Ciphertext>& a, const std::vector<Ciphertext>& b,
                                  const RelinKey& rk, Exec exec) {
  std::vector<std::optional<Ciphertext>> out(a.size());
  for_each_index(a.size(), exec, [&](std::size_t i) { out[i].emplace(apply(op, a[i], b[i], rk)); });
  std::vector<Ciphertext> result;
  result.reserve(out.size());
  for (auto& c : out) result.push_back(std::move(*c));
  return result;
}

template <typename Combine>
Ciphertext tree_reduce(std::vector<Ciphertext> level, Exec exec, Combine combine) {
  while (level.size() > 1) {
    const std::size_t pairs = level.size() / 2;
    std::vector<std::optional<Ciphertext>> next(pairs);
    for_each_index(pairs, exec, [&](std::size_t i) { next[i].emplace(combine(level[2 * i], level[2 * i + 1])); });
    std::vector<Ciphertext> merged;
    merged.reserve(pairs + 1);
    for (auto& c : next) merged.push_back(std::move(*c));
    if (level.size() % 2) merged.push_back(std::move(level.back()));
    level = std::move(merged);
  }
  return std::move(level.front());
}

std::vector<Ciphertext> encrypt_all(const PublicKey& pk, std::span<const BigInt> values, RandomSource& rng,
                                    Exec exec) {
  std::vector<RandomSource> children;
  children.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) children.push_back(rng.split());
  std::vector<std::optional<Ciphertext>> out(values.size());
  for_each_index(values.size(), exec, [&](std::size_t i) {
    out[i].emplace(encrypt(pk, encode_int(values[i], pk.params()), children[i]));
  });
  std::vector<Ciphertext> result;
  result.reserve(out.size());
  for (auto& c : out) result.push_back(std::move(*c));
  return result;
}

std::vector<BigInt> decrypt_all(const SecretKey& sk, const std::vector<Ciphertext>& elems, Exec exec) {
  std::vector<BigInt> out(elems.size());
  for_each_index(elems.size(), exec, [&](std::size_t i) { out[i] = decode_int(decrypt(sk, elems[i])); });
  return out;
}

}  // namespace

CipherVector::CipherVector(ParamSet params, std::vector<Ciphertext> elems)
    : params_(std::move(params)), elems_(std::move(elems)) {
  for (const auto& c : elems_) require_params(params_, c);
}

CipherMatrix::CipherMatrix(ParamSet params, std::size_t rows, std::size_t cols, std::vector<Ciphertext> elems)
    : params_(std::move(params)), rows_(rows), cols_(cols), elems_(std::move(elems)) {
  if (elems_.size() != rows_ * cols_)
    throw Error(Errc::length_mismatch, "a " + std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix needs " +
                                           std::to_string(rows_ * cols_) + " elements, got " +
                                           std::to_string(elems_.size()));
  for (const auto& c : elems_) require_params(params_, c);
}

CipherVector encrypt_vector(const PublicKey& pk, std::span<const BigInt> values, RandomSource& rng, Exec exec) {
  return CipherVector(pk.params(), encrypt_all(pk, values, rng, exec));
}

std::vector<BigInt> decrypt_vector(const SecretKey& sk, const CipherVector& v, Exec exec) {
  require_same(sk.params(), v.params());
  return decrypt_all(sk, v.elems(), exec);
}

CipherMatrix encrypt_matrix(const PublicKey& pk, std::size_t rows, std::size_t cols, std::span<const BigInt> values,
                            RandomSource& rng, Exec exec) {
  if (values.size() != rows * cols) throw Error(Errc::length_mismatch, "value count does not match matrix shape");
  return CipherMatrix(pk.params(), rows, cols, encrypt_all(pk, values, rng, exec));
}

std::vector<BigInt> decrypt_matrix(const SecretKey& sk, const CipherMatrix& m, Exec exec) {
  require_same(sk.params(), m.params());
  return decrypt_all(sk, m.elems(), exec);
}

CipherVector vec_elementwise(ElementOp op, const CipherVector& a, const CipherVector& b, const RelinKey& rk,
                             Exec exec) {
  require_same(a.params(), b.params());
  if (a.size() != b.size())
    throw Error(Errc::length_mismatch, "vector lengths " + std::to_string(a.size()) + " and " +
                                           std::to_string(b.size()) + " differ");
  return CipherVector(a.params(), apply_all(op, a.elems(), b.elems(), rk, exec));
}

CipherMatrix mat_elementwise(ElementOp op, const CipherMatrix& a, const CipherMatrix& b, const RelinKey& rk,
                             Exec exec) {
  require_same(a.params(), b.params());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::length_mismatch, "matrix shapes differ");
  return CipherMatrix(a.params(), a.rows(), a.cols(), apply_all(op, a.elems(), b.elems(), rk, exec));
}

Ciphertext inner_product(const CipherVector& a, const CipherVector& b, const RelinKey& rk, Exec exec) {
  require_same(a.params(), b.params());
  if (a.size() != b.size())
    throw Error(Errc::length_mismatch, "vector lengths " + std::to_string(a.size()) + " and " +
                                           std::to_string(b.size()) + " differ");
  if (a.empty()) throw Error(Errc::empty_input, "inner product of empty vectors");
  const ParamSet& p = a.params();
  const std::size_t k = dot_product_primes(p, a.size());
  std::vector<std::optional<PreparedCiphertext>> fa(a.size()), fb(b.size());
  for_each_index(2 * a.size(), exec, [&](std::size_t i) {
    if (i < a.size())
      fa[i].emplace(prepare(a[i], k));
    else
      fb[i - a.size()].emplace(prepare(b[i - a.size()], k));
  });
  std::vector<const PreparedCiphertext*> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa.push_back(&*fa[i]);
    pb.push_back(&*fb[i]);
  }
  return relinearise(he_dot_raw_prepared(p, pa, pb), rk);
}

CipherMatrix mat_mul(const CipherMatrix& a, const CipherMatrix& b, const RelinKey& rk, Exec exec) {
  require_same(a.params(), b.params());
  if (a.cols() != b.rows())
    throw Error(Errc::length_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                           " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  const ParamSet& p = a.params();
  const std::size_t inner = a.cols();
  const std::size_t cells = a.rows() * b.cols();
  if (inner == 0) {
    std::vector<Ciphertext> zeros(cells, Ciphertext::trivial_zero(p));
    return CipherMatrix(p, a.rows(), b.cols(), std::move(zeros));
  }
  // Transform every operand once; cells then share the forms read-only.
  const std::size_t k = dot_product_primes(p, inner);
  const std::size_t na = a.elems().size(), nb = b.elems().size();
  std::vector<std::optional<PreparedCiphertext>> fa(na), fb(nb);
  for_each_index(na + nb, exec, [&](std::size_t i) {
    if (i < na)
      fa[i].emplace(prepare(a.elems()[i], k));
    else
      fb[i - na].emplace(prepare(b.elems()[i - na], k));
  });
  std::vector<std::optional<Ciphertext>> out(cells);
  for_each_index(cells, exec, [&](std::size_t cell) {
    const std::size_t r = cell / b.cols(), c = cell % b.cols();
    std::vector<const PreparedCiphertext*> row, col;
    row.reserve(inner);
    col.reserve(inner);
    for (std::size_t j = 0; j < inner; ++j) {
      row.push_back(&*fa[r * inner + j]);
      col.push_back(&*fb[j * b.cols() + c]);
    }
    out[cell].emplace(relinearise(he_dot_raw_prepared(p, row, col), rk));
  });
  std::vector<Ciphertext> elems;
  elems.reserve(cells);
  for (auto& c : out) elems.push_back(std::move(*c));
  return CipherMatrix(p, a.rows(), b.cols(), std::move(elems));
}

Ciphertext vec_sum(const CipherVector& v, Exec exec) {
  if (v.empty()) return Ciphertext::trivial_zero(v.params());
  return tree_reduce(v.elems(), exec, [](const Ciphertext& x, const Ciphertext& y) { return he_add(x, y); });
}

Ciphertext vec_prod(const CipherVector& v, const RelinKey& rk, Exec exec) {
  if (v.empty()) throw Error(Errc::empty_input, "product of an empty vector");
  return tree_reduce(v.elems(), exec, [&rk](const Ciphertext& x, const Ciphertext& y) { return he_mul(x, y, rk); });
}

CipherVector diag_extract(const CipherMatrix& m) {
  const std::size_t k = std::min(m.rows(), m.cols());
  std::vector<Ciphertext> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(m.at(i, i));
  return CipherVector(m.params(), std::move(out));
}

CipherMatrix diag_make(const CipherVector& v) {
  const std::size_t k = v.size();
  std::vector<Ciphertext> elems(k * k, Ciphertext::trivial_zero(v.params()));
  for (std::size_t i = 0; i < k; ++i) elems[i * k + i] = v[i];
  return CipherMatrix(v.params(), k, k, std::move(elems));
}

CipherMatrix transpose(const CipherMatrix& m) {
  std::vector<Ciphertext> elems;
  elems.reserve(m.elems().size());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) elems.push_back(m.at(r, c));
  return CipherMatrix(m.params(), m.cols(), m.rows(), std::move(elems));
}

const Ciphertext& index_get(const CipherVector& v, std::size_t i) {
  if (i >= v.size())
    throw Error(Errc::out_of_range, "index " + std::to_string(i) + " outside vector of length " +
                                        std::to_string(v.size()));
  return v[i];
}

CipherVector index_set(const CipherVector& v, std::size_t i, const Ciphertext& value) {
  index_get(v, i);
  std::vector<Ciphertext> elems = v.elems();
  elems[i] = value;
  return CipherVector(v.params(), std::move(elems));
}

const Ciphertext& index_get(const CipherMatrix& m, std::size_t r, std::size_t c) {
  if (r >= m.rows() || c >= m.cols())
    throw Error(Errc::out_of_range, "cell (" + std::to_string(r) + ", " + std::to_string(c) + ") outside " +
                                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  return m.at(r, c);
}

CipherMatrix index_set(const CipherMatrix& m, std::size_t r, std::size_t c, const Ciphertext& value) {
  index_get(m, r, c);
  std::vector<Ciphertext> elems = m.elems();
  elems[r * m.cols() + c] = value;
  return CipherMatrix(m.params(), m.rows(), m.cols(), std::move(elems));
}

CipherVector concat(const CipherVector& a, const CipherVector& b) {
  require_same(a.params(), b.params());
  std::vector<Ciphertext> elems = a.elems();
  elems.insert(elems.end(), b.elems().begin(), b.elems().end());
  return CipherVector(a.params(), std::move(elems));
}

std::size_t length(const CipherVector& v) { return v.size(); }

std::pair<std::size_t, std::size_t> dim(const CipherMatrix& m) { return {m.rows(), m.cols()}; }

}  // namespace hefv
