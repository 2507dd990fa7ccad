// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/rns.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "hefv/error.hpp"

namespace hefv::rns {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::size_t kPoolSize = 24;
constexpr unsigned kMaxLogTwoN = 18;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 base, u64 e, u64 p) {
  u64 r = 1;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n with these bases.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 shoup(u64 w, u64 p) { return static_cast<u64>((static_cast<u128>(w) << 64) / p); }

// a * w mod p with w' = floor(w * 2^64 / p) precomputed.
inline u64 mul_shoup(u64 a, u64 w, u64 wp, u64 p) {
  u64 q = static_cast<u64>((static_cast<u128>(a) * wp) >> 64);
  u64 r = a * w - q * p;
  return r >= p ? r - p : r;
}

struct NttTables {
  u64 p = 0;
  std::vector<u64> psi, psi_shoup;    // psi^bitrev(i)
  std::vector<u64> ipsi, ipsi_shoup;  // psi^-bitrev(i)
  u64 n_inv = 0, n_inv_shoup = 0;
};

unsigned log2_exact(std::size_t n) {
  unsigned l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

std::size_t bitrev(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned i = 0; i < bits; ++i) r |= ((x >> i) & 1) << (bits - 1 - i);
  return r;
}

std::unique_ptr<NttTables> build_tables(std::size_t n, u64 p) {
  auto t = std::make_unique<NttTables>();
  t->p = p;
  const u64 two_n = 2 * n;
  u64 psi = 0;
  for (u64 x = 2;; ++x) {
    u64 g = powmod(x, (p - 1) / two_n, p);
    if (powmod(g, n, p) == p - 1) {
      psi = g;
      break;
    }
  }
  const u64 psi_inv = powmod(psi, p - 2, p);
  const unsigned logn = log2_exact(n);
  t->psi.resize(n);
  t->ipsi.resize(n);
  t->psi_shoup.resize(n);
  t->ipsi_shoup.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t e = bitrev(i, logn);
    t->psi[i] = powmod(psi, e, p);
    t->ipsi[i] = powmod(psi_inv, e, p);
    t->psi_shoup[i] = shoup(t->psi[i], p);
    t->ipsi_shoup[i] = shoup(t->ipsi[i], p);
  }
  t->n_inv = powmod(n % p, p - 2, p);
  t->n_inv_shoup = shoup(t->n_inv, p);
  return t;
}

const NttTables& tables(std::size_t n, std::size_t prime_index) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<NttTables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, prime_index}];
  if (!slot) slot = build_tables(n, prime_pool()[prime_index]);
  return *slot;
}

void forward_ntt(std::span<u64> a, const NttTables& tb) {
  const std::size_t n = a.size();
  const u64 p = tb.p;
  for (std::size_t m = 1, t = n / 2; m < n; m *= 2, t /= 2) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j1 = 2 * i * t;
      const u64 s = tb.psi[m + i], sp = tb.psi_shoup[m + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        u64 u = a[j];
        u64 v = mul_shoup(a[j + t], s, sp, p);
        u64 sum = u + v;
        a[j] = sum >= p ? sum - p : sum;
        a[j + t] = u >= v ? u - v : u + p - v;
      }
    }
  }
}

void inverse_ntt(std::span<u64> a, const NttTables& tb) {
  const std::size_t n = a.size();
  const u64 p = tb.p;
  for (std::size_t m = n, t = 1; m > 1; m /= 2, t *= 2) {
    const std::size_t h = m / 2;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const u64 s = tb.ipsi[h + i], sp = tb.ipsi_shoup[h + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        u64 u = a[j];
        u64 v = a[j + t];
        u64 sum = u + v;
        a[j] = sum >= p ? sum - p : sum;
        a[j + t] = mul_shoup(u >= v ? u - v : u + p - v, s, sp, p);
      }
      j1 += 2 * t;
    }
  }
  for (auto& x : a) x = mul_shoup(x, tb.n_inv, tb.n_inv_shoup, p);
}

// Garner coefficients and the prime product for the first k primes.
struct CrtTables {
  std::vector<std::vector<u64>> inv;  // inv[j][i] = p_j^-1 mod p_i, j < i
  BigInt product;
  BigInt half;
};

const CrtTables& crt_tables(std::size_t k) {
  static std::mutex mu;
  static std::array<std::unique_ptr<CrtTables>, kPoolSize + 1> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[k];
  if (!slot) {
    auto primes = prime_pool();
    slot = std::make_unique<CrtTables>();
    slot->inv.assign(k, std::vector<u64>(k, 0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = j + 1; i < k; ++i)
        slot->inv[j][i] = powmod(primes[j] % primes[i], primes[i] - 2, primes[i]);
    slot->product = 1;
    for (std::size_t i = 0; i < k; ++i) slot->product *= static_cast<unsigned long>(primes[i]);
    slot->half = slot->product / 2;
  }
  return *slot;
}

void check_n(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0 || log2_exact(n) >= kMaxLogTwoN)
    throw Error(Errc::invalid_parameter, "NTT length must be a power of two below 2^18");
}

void check_primes(std::size_t k) {
  if (k == 0 || k > kPoolSize)
    throw Error(Errc::invalid_parameter, "product too wide for the RNS prime pool");
}

}  // namespace

std::span<const std::uint64_t> prime_pool() {
  static const std::vector<u64> pool = [] {
    std::vector<u64> primes;
    const u64 step = u64{1} << kMaxLogTwoN;
    for (u64 k = ((u64{1} << 61) - 2) / step; primes.size() < kPoolSize; --k) {
      u64 p = k * step + 1;
      if (is_prime(p)) primes.push_back(p);
    }
    return primes;
  }();
  return pool;
}

std::size_t primes_for_bits(std::size_t bits) {
  // Every pool prime exceeds 2^60.
  std::size_t k = std::max<std::size_t>(1, (bits + 59) / 60);
  check_primes(k);
  return k;
}

std::size_t product_bits(std::size_t terms, std::size_t n, std::size_t bits_a, std::size_t bits_b) {
  auto bl = [](std::size_t v) {
    std::size_t b = 0;
    while (v) {
      ++b;
      v >>= 1;
    }
    return b;
  };
  return bits_a + bits_b + bl(n) + bl(terms) + 1;
}

Form::Form(std::size_t n, std::size_t primes) : n_(n), k_(primes), data_(n * primes, 0) {}

Form forward(std::span<const BigInt> coeffs, std::size_t primes) {
  const std::size_t n = coeffs.size();
  check_n(n);
  check_primes(primes);
  auto pool = prime_pool();
  Form f(n, primes);
  for (std::size_t j = 0; j < n; ++j) {
    const mpz_srcptr c = coeffs[j].get_mpz_t();
    if (mpz_fits_slong_p(c)) {
      const long v = mpz_get_si(c);
      for (std::size_t i = 0; i < primes; ++i) {
        const u64 p = pool[i];
        f.residues(i)[j] = v >= 0 ? static_cast<u64>(v) % p
                                  : (p - (static_cast<u64>(-(v + 1)) + 1) % p) % p;
      }
    } else {
      for (std::size_t i = 0; i < primes; ++i) f.residues(i)[j] = mpz_fdiv_ui(c, pool[i]);
    }
  }
  for (std::size_t i = 0; i < primes; ++i) forward_ntt(f.residues(i), tables(n, i));
  return f;
}

Form forward(std::span<const std::int64_t> coeffs, std::size_t primes) {
  const std::size_t n = coeffs.size();
  check_n(n);
  check_primes(primes);
  auto pool = prime_pool();
  Form f(n, primes);
  for (std::size_t i = 0; i < primes; ++i) {
    const u64 p = pool[i];
    auto r = f.residues(i);
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t v = coeffs[j];
      r[j] = v >= 0 ? static_cast<u64>(v) % p : (p - (static_cast<u64>(-(v + 1)) + 1) % p) % p;
    }
    forward_ntt(r, tables(n, i));
  }
  return f;
}

void multiply_accumulate(Form& acc, const Form& a, const Form& b) {
  if (acc.n() != a.n() || a.n() != b.n() || acc.primes() != a.primes() || a.primes() != b.primes())
    throw Error(Errc::parameter_mismatch, "RNS forms disagree in length or prime count");
  auto pool = prime_pool();
  for (std::size_t i = 0; i < acc.primes(); ++i) {
    const u64 p = pool[i];
    auto r = acc.residues(i);
    auto x = a.residues(i);
    auto y = b.residues(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      u64 v = r[j] + mulmod(x[j], y[j], p);
      r[j] = v >= p ? v - p : v;
    }
  }
}

Form multiply(const Form& a, const Form& b) {
  Form acc(a.n(), a.primes());
  multiply_accumulate(acc, a, b);
  return acc;
}

void add_to(Form& acc, const Form& a) {
  if (acc.n() != a.n() || acc.primes() != a.primes())
    throw Error(Errc::parameter_mismatch, "RNS forms disagree in length or prime count");
  auto pool = prime_pool();
  for (std::size_t i = 0; i < acc.primes(); ++i) {
    const u64 p = pool[i];
    auto r = acc.residues(i);
    auto x = a.residues(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      u64 v = r[j] + x[j];
      r[j] = v >= p ? v - p : v;
    }
  }
}

std::vector<BigInt> inverse(const Form& f) {
  const std::size_t n = f.n(), k = f.primes();
  auto pool = prime_pool();
  Form work = f;
  for (std::size_t i = 0; i < k; ++i) inverse_ntt(work.residues(i), tables(n, i));

  const CrtTables& crt = crt_tables(k);
  std::vector<BigInt> out(n);
  std::vector<u64> y(k);
  for (std::size_t j = 0; j < n; ++j) {
    // Mixed-radix digits: value = y0 + y1 p0 + y2 p0 p1 + ...
    for (std::size_t i = 0; i < k; ++i) {
      const u64 p = pool[i];
      u64 v = work.residues(i)[j];
      for (std::size_t jj = 0; jj < i; ++jj) {
        const u64 yj = y[jj] % p;
        v = v >= yj ? v - yj : v + p - yj;
        v = mulmod(v, crt.inv[jj][i], p);
      }
      y[i] = v;
    }
    mpz_ptr x = out[j].get_mpz_t();
    mpz_set_ui(x, y[k - 1]);
    for (std::size_t i = k - 1; i-- > 0;) {
      mpz_mul_ui(x, x, pool[i]);
      mpz_add_ui(x, x, y[i]);
    }
    if (mpz_cmp(x, crt.half.get_mpz_t()) > 0) mpz_sub(x, x, crt.product.get_mpz_t());
  }
  return out;
}

std::vector<BigInt> negacyclic_product(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.size() != b.size()) throw Error(Errc::parameter_mismatch, "operand lengths differ");
  std::size_t ba = 0, bb = 0;
  for (const auto& c : a) ba = std::max(ba, bit_length(c));
  for (const auto& c : b) bb = std::max(bb, bit_length(c));
  const std::size_t k = primes_for_bits(product_bits(1, a.size(), ba, bb));
  return inverse(multiply(forward(a, k), forward(b, k)));
}

}  // namespace hefv::rns
