// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/sampling.hpp"

#include <sodium.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "hefv/error.hpp"

namespace hefv {
namespace {

constexpr std::size_t kBufferBytes = 4096;

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw Error(Errc::randomness, "libsodium initialisation failed");
}

unsigned bits_of(unsigned __int128 v) {
  unsigned b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

RandomSource::RandomSource(const std::array<std::uint8_t, 32>& key, bool deterministic)
    : key_(key), buffer_(kBufferBytes), pos_(kBufferBytes), deterministic_(deterministic) {}

RandomSource RandomSource::cryptographic() {
  ensure_sodium();
  std::array<std::uint8_t, 32> key{};
  randombytes_buf(key.data(), key.size());
  return RandomSource(key, false);
}

RandomSource RandomSource::seeded(std::span<const std::uint8_t> seed) {
  ensure_sodium();
  std::array<std::uint8_t, 32> key{};
  crypto_generichash(key.data(), key.size(), seed.data(), seed.size(), nullptr, 0);
  return RandomSource(key, true);
}

RandomSource RandomSource::seeded_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::invalid_parameter, "seed must have an even number of hex digits");
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]), lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::invalid_parameter, "seed is not hexadecimal");
    bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return seeded(bytes);
}

void RandomSource::refill() {
  static const std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  std::fill(buffer_.begin(), buffer_.end(), 0);
  if (crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(), nonce.data(), block_,
                                    key_.data()) != 0)
    throw Error(Errc::randomness, "keystream generation failed");
  block_ += buffer_.size() / 64;
  pos_ = 0;
}

void RandomSource::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) refill();
    std::size_t take = std::min(out.size() - done, buffer_.size() - pos_);
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(pos_), take, out.begin() + static_cast<std::ptrdiff_t>(done));
    pos_ += take;
    done += take;
  }
}

std::uint64_t RandomSource::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

unsigned __int128 RandomSource::next_u128() {
  unsigned __int128 lo = next_u64();
  unsigned __int128 hi = next_u64();
  return (hi << 64) | lo;
}

RandomSource RandomSource::split() {
  std::array<std::uint8_t, 32> key{};
  fill(key);
  return RandomSource(key, deterministic_);
}

GaussianSpec GaussianSpec::with_default_bound(double sigma) {
  return GaussianSpec{sigma, static_cast<std::int64_t>(std::ceil(10.0 * sigma))};
}

void GaussianSpec::validate() const {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw Error(Errc::invalid_parameter, "sigma must be positive");
  if (bound < 1) throw Error(Errc::invalid_parameter, "gaussian bound B must be at least 1");
  if (bound > (std::int64_t{1} << 24)) throw Error(Errc::invalid_parameter, "gaussian bound B is too large");
}

DiscreteGaussian::DiscreteGaussian(const GaussianSpec& spec) : spec_(spec) {
  spec_.validate();
  const std::int64_t b = spec_.bound;
  // Scale so that the total stays below 2^126: the tail sum is at most
  // sqrt(2 pi) sigma + 1, and the support size caps the w >= 1 floor.
  const long double mass = std::sqrt(2.0L * 3.14159265358979323846L) * spec_.sigma + 1.0L;
  const long double cap = std::max<long double>(mass, static_cast<long double>(2 * b + 1));
  const int scale = 125 - static_cast<int>(std::ceil(std::log2(cap)));
  weights_.resize(static_cast<std::size_t>(2 * b + 1));
  const long double two_s2 = 2.0L * spec_.sigma * spec_.sigma;
  for (std::int64_t k = 0; k <= b; ++k) {
    long double w = std::ldexp(std::exp(-static_cast<long double>(k) * k / two_s2), scale);
    unsigned __int128 wi = static_cast<unsigned __int128>(std::floor(w + 0.5L));
    if (wi == 0) wi = 1;
    weights_[static_cast<std::size_t>(b + k)] = wi;
    weights_[static_cast<std::size_t>(b - k)] = wi;
  }
  cumulative_.resize(weights_.size());
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cumulative_[i] = acc;
  }
  total_ = acc;
  total_bits_ = bits_of(total_);
}

std::int64_t DiscreteGaussian::sample(RandomSource& rng) const {
  const unsigned __int128 mask =
      total_bits_ >= 128 ? ~static_cast<unsigned __int128>(0)
                         : ((static_cast<unsigned __int128>(1) << total_bits_) - 1);
  unsigned __int128 u;
  do {
    u = rng.next_u128() & mask;
  } while (u >= total_);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::int64_t>(it - cumulative_.begin()) - spec_.bound;
}

unsigned __int128 DiscreteGaussian::weight(std::int64_t k) const {
  if (k < -spec_.bound || k > spec_.bound) return 0;
  return weights_[static_cast<std::size_t>(k + spec_.bound)];
}

double DiscreteGaussian::probability(std::int64_t k) const {
  return static_cast<double>(static_cast<long double>(weight(k)) / static_cast<long double>(total_));
}

std::shared_ptr<const DiscreteGaussian> gaussian_sampler(const GaussianSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<double, std::int64_t>, std::shared_ptr<const DiscreteGaussian>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{spec.sigma, spec.bound}];
  if (!slot) slot = std::make_shared<const DiscreteGaussian>(spec);
  return slot;
}

RingElement sample_uniform_rq(const RingParams& params, RandomSource& rng) {
  const BigInt& q = params.q;
  // Draw ceil(log2 q) bits and reject values >= q.
  const std::size_t bits = bit_length(q - 1);
  const std::size_t bytes = (bits + 7) / 8;
  const unsigned top_mask = bits % 8 == 0 ? 0xffu : ((1u << (bits % 8)) - 1);
  const BigInt half = q / 2;
  std::vector<std::uint8_t> buf(bytes);
  std::vector<BigInt> coeffs(params.n);
  for (auto& c : coeffs) {
    do {
      rng.fill(buf);
      buf[bytes - 1] &= static_cast<std::uint8_t>(top_mask);
      mpz_import(c.get_mpz_t(), bytes, -1, 1, 0, 0, buf.data());
    } while (c >= q);
    if (c > half) c -= q;
  }
  return RingElement::trusted_reduced(params, std::move(coeffs));
}

RingElement sample_uniform_r2(const RingParams& params, RandomSource& rng) {
  std::vector<BigInt> coeffs(params.n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < params.n; ++i) {
    if (i % 64 == 0) word = rng.next_u64();
    coeffs[i] = static_cast<unsigned long>((word >> (i % 64)) & 1);
  }
  return RingElement::reduced(params, std::move(coeffs));
}

std::vector<std::int64_t> sample_gaussian_coeffs(std::size_t n, const DiscreteGaussian& g, RandomSource& rng) {
  std::vector<std::int64_t> out(n);
  for (auto& v : out) v = g.sample(rng);
  return out;
}

RingElement sample_gaussian(const RingParams& params, const GaussianSpec& spec, RandomSource& rng) {
  auto g = gaussian_sampler(spec);
  auto raw = sample_gaussian_coeffs(params.n, *g, rng);
  std::vector<BigInt> coeffs(params.n);
  for (std::size_t i = 0; i < params.n; ++i) coeffs[i] = static_cast<long>(raw[i]);
  // Gaussian draws live in R; reduction only matters when q <= 2B.
  return RingElement::reduced(params, std::move(coeffs));
}

}  // namespace hefv
