// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/serialize.hpp"

#include <gmp.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "hefv/error.hpp"

namespace hefv {
namespace {

constexpr std::uint8_t kMagic[4] = {'H', 'E', 'F', 'V'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kMaxKind = 5;

[[noreturn]] void corrupt(const std::string& why) { throw Error(Errc::corrupt_data, why); }

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void le(std::uint64_t v, std::size_t bytes) {
    for (std::size_t i = 0; i < bytes; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  // Magnitude of a non-negative integer in exactly `width` bytes.
  void magnitude(const BigInt& v, std::size_t width) {
    const std::size_t start = out_.size();
    out_.resize(start + width, 0);
    std::size_t count = 0;
    mpz_export(out_.data() + start, &count, -1, 1, -1, 0, v.get_mpz_t());
  }

  void integer(const BigInt& v) {
    const std::size_t len = (bit_length(v) + 7) / 8;
    le(len, 2);
    magnitude(v, len);
  }

  void poly(const RingElement& e, const BigInt& modulus) {
    const std::size_t width = coefficient_width(modulus);
    BigInt canon;
    for (const auto& c : e.coeffs()) {
      canon = c;
      if (sgn(canon) < 0) canon += modulus;
      magnitude(canon, width);
    }
  }

  void header(ObjectKind kind, const ParamSet& p) {
    out_.insert(out_.end(), std::begin(kMagic), std::end(kMagic));
    u8(kVersion);
    u8(static_cast<std::uint8_t>(kind));
    u8(static_cast<std::uint8_t>(p.d()));
    integer(p.q());
    integer(p.t);
    le(std::bit_cast<std::uint64_t>(p.gauss.sigma), 8);
    le(static_cast<std::uint64_t>(p.gauss.bound), 4);
    le(p.relin_base_log2, 4);
  }

  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> take(std::size_t count) {
    if (in_.size() - pos_ < count) corrupt("unexpected end of data at byte " + std::to_string(in_.size()));
    auto s = in_.subspan(pos_, count);
    pos_ += count;
    return s;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint64_t le(std::size_t bytes) {
    auto s = take(bytes);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bytes; ++i) v |= std::uint64_t{s[i]} << (8 * i);
    return v;
  }

  BigInt magnitude(std::size_t width) {
    auto s = take(width);
    BigInt v;
    mpz_import(v.get_mpz_t(), width, -1, 1, -1, 0, s.data());
    return v;
  }

  BigInt integer() {
    const std::size_t len = le(2);
    if (len > 0 && in_.size() - pos_ >= len && in_[pos_ + len - 1] == 0) corrupt("integer has a non-minimal length");
    return magnitude(len);
  }

  RingElement poly(const RingParams& ring) {
    const std::size_t width = coefficient_width(ring.q);
    const BigInt half = ring.q / 2;
    std::vector<BigInt> coeffs(ring.n);
    for (auto& c : coeffs) {
      c = magnitude(width);
      if (c >= ring.q) corrupt("coefficient " + to_string(c) + " is not below the modulus " + to_string(ring.q));
      if (c > half) c -= ring.q;
    }
    return RingElement::trusted_reduced(ring, std::move(coeffs));
  }

  ParamSet header(ObjectKind expected) {
    auto magic = take(4);
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) corrupt("bad magic bytes");
    const std::uint8_t version = u8();
    if (version != kVersion) corrupt("unsupported format version " + std::to_string(version));
    const std::uint8_t kind = u8();
    if (kind > kMaxKind) corrupt("unknown object kind " + std::to_string(kind));
    if (kind != static_cast<std::uint8_t>(expected))
      corrupt("expected object kind " + std::to_string(static_cast<int>(expected)) + ", found " +
              std::to_string(kind));
    ParamOverrides o;
    o.d = u8();
    o.q = integer();
    o.t = integer();
    o.sigma = std::bit_cast<double>(le(8));
    o.bound = static_cast<std::int64_t>(le(4));
    o.relin_base_log2 = static_cast<unsigned>(le(4));
    try {
      return make_params(o);
    } catch (const Error& e) {
      corrupt(std::string("parameter block rejected: ") + e.what());
    }
  }

  std::size_t count() { return static_cast<std::size_t>(le(4)); }

  void finish() {
    if (pos_ != in_.size()) corrupt(std::to_string(in_.size() - pos_) + " trailing bytes");
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t coefficient_width(const BigInt& modulus) {
  // ceil(log2(m) / 8) = ceil(bit_length(m - 1) / 8) for m >= 2
  return (bit_length(BigInt(modulus - 1)) + 7) / 8;
}

Bytes serialize(const ParamSet& p) {
  Writer w;
  w.header(ObjectKind::params, p);
  return w.take();
}

Bytes serialize(const PublicKey& pk) {
  Writer w;
  w.header(ObjectKind::public_key, pk.params());
  w.poly(pk.kp1(), pk.params().q());
  w.poly(pk.kp2(), pk.params().q());
  return w.take();
}

Bytes serialize(const SecretKey& sk) {
  Writer w;
  w.header(ObjectKind::secret_key, sk.params());
  w.poly(sk.poly(), sk.params().q());
  return w.take();
}

Bytes serialize(const RelinKey& rk) {
  Writer w;
  w.header(ObjectKind::relin_key, rk.params());
  w.le(rk.pairs().size(), 4);
  for (const auto& pr : rk.pairs()) {
    w.poly(pr.r0, rk.params().q());
    w.poly(pr.r1, rk.params().q());
  }
  return w.take();
}

Bytes serialize(std::span<const Ciphertext> cts, const ParamSet& p) {
  Writer w;
  w.header(ObjectKind::ciphertexts, p);
  w.le(cts.size(), 4);
  for (const auto& c : cts) {
    if (!(c.params() == p)) throw Error(Errc::parameter_mismatch, "ciphertext uses different parameters");
    w.u8(static_cast<std::uint8_t>(c.size()));
    for (const auto& part : c.parts()) w.poly(part, p.q());
  }
  return w.take();
}

Bytes serialize(std::span<const Plaintext> pts, const ParamSet& p) {
  Writer w;
  w.header(ObjectKind::plaintexts, p);
  w.le(pts.size(), 4);
  for (const auto& pt : pts) {
    if (!(pt.poly.params() == p.plaintext_ring()))
      throw Error(Errc::parameter_mismatch, "plaintext does not belong to R_t of these parameters");
    w.poly(pt.poly, p.t);
  }
  return w.take();
}

ObjectKind peek_kind(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 6) corrupt("object is too short");
  if (!std::equal(bytes.begin(), bytes.begin() + 4, std::begin(kMagic))) corrupt("bad magic bytes");
  if (bytes[4] != kVersion) corrupt("unsupported format version " + std::to_string(bytes[4]));
  if (bytes[5] > kMaxKind) corrupt("unknown object kind " + std::to_string(bytes[5]));
  return static_cast<ObjectKind>(bytes[5]);
}

ParamSet read_params(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  ParamSet p = r.header(ObjectKind::params);
  r.finish();
  return p;
}

PublicKey read_public_key(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  ParamSet p = r.header(ObjectKind::public_key);
  RingElement kp1 = r.poly(p.ring);
  RingElement kp2 = r.poly(p.ring);
  r.finish();
  return PublicKey(std::move(p), std::move(kp1), std::move(kp2));
}

SecretKey read_secret_key(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  ParamSet p = r.header(ObjectKind::secret_key);
  RingElement s = r.poly(p.ring);
  r.finish();
  try {
    return SecretKey(std::move(p), std::move(s));
  } catch (const Error& e) {
    corrupt(std::string("secret key rejected: ") + e.what());
  }
}

RelinKey read_relin_key(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  ParamSet p = r.header(ObjectKind::relin_key);
  const std::size_t count = r.count();
  if (count != p.relin_digits())
    corrupt("relinearisation key holds " + std::to_string(count) + " pairs, parameters require " +
            std::to_string(p.relin_digits()));
  std::vector<RelinPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RingElement r0 = r.poly(p.ring);
    RingElement r1 = r.poly(p.ring);
    pairs.push_back({std::move(r0), std::move(r1)});
  }
  r.finish();
  return RelinKey(std::move(p), std::move(pairs));
}

std::pair<ParamSet, std::vector<Ciphertext>> read_ciphertexts(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  ParamSet p = r.header(ObjectKind::ciphertexts);
  const std::size_t count = r.count();
  std::vector<Ciphertext> cts;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t parts = r.u8();
    if (parts < 2 || parts > 3) corrupt("ciphertext with " + std::to_string(parts) + " parts");
    std::vector<RingElement> polys;
    for (std::uint8_t j = 0; j < parts; ++j) polys.push_back(r.poly(p.ring));
    cts.emplace_back(p, std::move(polys));
  }
  r.finish();
  return {std::move(p), std::move(cts)};
}

std::pair<ParamSet, std::vector<Plaintext>> read_plaintexts(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  ParamSet p = r.header(ObjectKind::plaintexts);
  const std::size_t count = r.count();
  std::vector<Plaintext> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(Plaintext{r.poly(p.plaintext_ring())});
  r.finish();
  return {std::move(p), std::move(pts)};
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path.string() + "' for reading");
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::io, "error while reading '" + path.string() + "'");
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(Errc::io, "error while writing '" + path.string() + "'");
}

}  // namespace hefv
