// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "hefv/ring.hpp"

namespace hefv {

// ChaCha20 keystream generator. In cryptographic mode the key comes from the
// operating system; in seeded mode it is a hash of the seed, so identical seeds
// and identical request sequences give identical output.
//
// A RandomSource is single-owner state. Workers that need randomness take a
// child via split() before fanning out.
class RandomSource {
 public:
  static RandomSource cryptographic();
  static RandomSource seeded(std::span<const std::uint8_t> seed);
  // Hex string of even length; throws invalid_parameter otherwise.
  static RandomSource seeded_hex(std::string_view hex);

  RandomSource(RandomSource&&) noexcept = default;
  RandomSource& operator=(RandomSource&&) noexcept = default;
  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;

  bool deterministic() const { return deterministic_; }

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  unsigned __int128 next_u128();

  // Child source keyed from the next 32 bytes of this stream.
  RandomSource split();

 private:
  RandomSource(const std::array<std::uint8_t, 32>& key, bool deterministic);
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_ = 0;
  std::vector<std::uint8_t> buffer_;
  std::size_t pos_ = 0;
  bool deterministic_ = false;
};

struct GaussianSpec {
  double sigma = 0;
  std::int64_t bound = 0;  // support is exactly {-bound, ..., bound}

  // bound = ceil(10 sigma)
  static GaussianSpec with_default_bound(double sigma);
  // Throws invalid_parameter unless sigma > 0 and bound >= 1.
  void validate() const;

  friend bool operator==(const GaussianSpec&, const GaussianSpec&) = default;
};

// Inverse-CDF sampler over integer weights w(k) = round(2^s exp(-k^2 / 2 sigma^2)),
// with w(k) = w(-k) and w(k) >= 1 on the whole support. The pmf is w(k) / W.
class DiscreteGaussian {
 public:
  explicit DiscreteGaussian(const GaussianSpec& spec);

  const GaussianSpec& spec() const { return spec_; }
  std::int64_t sample(RandomSource& rng) const;

  unsigned __int128 weight(std::int64_t k) const;
  unsigned __int128 total_weight() const { return total_; }
  double probability(std::int64_t k) const;

 private:
  GaussianSpec spec_;
  std::vector<unsigned __int128> weights_;     // index k + bound
  std::vector<unsigned __int128> cumulative_;  // inclusive prefix sums
  unsigned __int128 total_ = 0;
  unsigned total_bits_ = 0;
};

// Shared, lazily built sampler for a spec.
std::shared_ptr<const DiscreteGaussian> gaussian_sampler(const GaussianSpec& spec);

RingElement sample_uniform_rq(const RingParams& params, RandomSource& rng);
RingElement sample_uniform_r2(const RingParams& params, RandomSource& rng);
RingElement sample_gaussian(const RingParams& params, const GaussianSpec& spec, RandomSource& rng);

// Raw small-coefficient draws, used on hot paths that feed the RNS engine directly.
std::vector<std::int64_t> sample_gaussian_coeffs(std::size_t n, const DiscreteGaussian& g, RandomSource& rng);

}  // namespace hefv
