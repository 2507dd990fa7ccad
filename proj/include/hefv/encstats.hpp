// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Division-free statistics over encrypted data. Each statistic comes back as
// an encrypted numerator and a plaintext denominator; the key holder divides
// after decryption. Denominators depend only on the sample count, which is
// treated as public.

#pragma once

#include <vector>

#include "hefv/bigint.hpp"
#include "hefv/collections.hpp"

namespace hefv {

struct StatParts {
  Ciphertext numerator;
  BigInt denominator;
};

// sum(X) over |X|. Throws empty_input for an empty vector.
StatParts enc_mean_parts(const CipherVector& x, Exec exec = Exec::parallel);

// n sum(x_i y_i) - sum(x) sum(y) over n (n - 1). Needs n >= 2.
StatParts enc_covariance_parts(const CipherVector& x, const CipherVector& y, const RelinKey& rk,
                               Exec exec = Exec::parallel);

// Integer weights of a trained model rescaled by `scale`; score = w . x + intercept.
struct LinearModel {
  std::vector<BigInt> weights;
  BigInt intercept;
  BigInt scale = 1;
};

// Encrypted score sum_j w_j x_j + intercept * one, where `one` is a fresh
// encryption of 1 supplied by the caller. Weights enter as encoded plaintexts;
// the class is the sign of the decrypted score.
Ciphertext linear_means_score(const LinearModel& model, const CipherVector& x, const Ciphertext& one,
                              Exec exec = Exec::parallel);

}  // namespace hefv
