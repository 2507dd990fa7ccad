// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hefv/bigint.hpp"
#include "hefv/scheme.hpp"

namespace hefv {

// Centered noise term e = [c1 + c2 s (+ c3 s^2)]_q - delta * m, where m is the
// expected plaintext lifted to centered form.
RingElement noise_term(const Ciphertext& ct, const SecretKey& sk, const Plaintext& pt);

// log2(delta / (2 ||e||_inf)) in bits; negative means decryption is about to
// fail. A zero noise term is treated as norm 1.
double noise_budget(const Ciphertext& ct, const SecretKey& sk, const Plaintext& pt);

}  // namespace hefv
