// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/encstats.hpp"

#include <optional>

#include "hefv/encoding.hpp"
#include "hefv/error.hpp"

namespace hefv {

StatParts enc_mean_parts(const CipherVector& x, Exec exec) {
  if (x.empty()) throw Error(Errc::empty_input, "mean of an empty vector");
  return {vec_sum(x, exec), BigInt(static_cast<unsigned long>(x.size()))};
}

StatParts enc_covariance_parts(const CipherVector& x, const CipherVector& y, const RelinKey& rk, Exec exec) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch, "samples of length " + std::to_string(x.size()) + " and " +
                                           std::to_string(y.size()));
  if (x.size() < 2) throw Error(Errc::empty_input, "covariance needs at least two samples");
  const BigInt n(static_cast<unsigned long>(x.size()));
  const Ciphertext cross = he_scale(inner_product(x, y, rk, exec), n);
  const Ciphertext sums = he_mul(vec_sum(x, exec), vec_sum(y, exec), rk);
  return {he_sub(cross, sums), n * (n - 1)};
}

Ciphertext linear_means_score(const LinearModel& model, const CipherVector& x, const Ciphertext& one, Exec exec) {
  if (model.weights.size() != x.size())
    throw Error(Errc::length_mismatch, "model has " + std::to_string(model.weights.size()) +
                                           " weights, input has " + std::to_string(x.size()) + " features");
  if (model.scale < 1) throw Error(Errc::invalid_parameter, "model scale must be positive");
  const ParamSet& p = x.params();
  if (!(one.params() == p)) throw Error(Errc::parameter_mismatch, "encrypted one uses different parameters");
  std::vector<std::optional<Ciphertext>> terms(x.size() + 1);
  for_each_index(x.size() + 1, exec, [&](std::size_t j) {
    if (j < x.size())
      terms[j].emplace(he_mul_plain(x[j], encode_int(model.weights[j], p)));
    else
      terms[j].emplace(he_mul_plain(one, encode_int(model.intercept, p)));
  });
  std::vector<Ciphertext> elems;
  elems.reserve(terms.size());
  for (auto& t : terms) elems.push_back(std::move(*t));
  return vec_sum(CipherVector(p, std::move(elems)), exec);
}

}  // namespace hefv
