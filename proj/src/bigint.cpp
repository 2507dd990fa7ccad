// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/bigint.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "hefv/error.hpp"

namespace hefv {

std::size_t bit_length(const BigInt& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

BigInt pow2(unsigned k) {
  BigInt r;
  mpz_setbit(r.get_mpz_t(), k);
  return r;
}

double log2_abs(const BigInt& x) {
  if (sgn(x) == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return Error(Errc::invalid_parameter, "not an integer: '" + s + "'"); };
  if (s.empty()) throw bad();

  if (auto caret = s.find('^'); caret != std::string::npos) {
    if (s.substr(0, caret) != "2") throw bad();
    std::string e = s.substr(caret + 1);
    if (e.empty() || e.size() > 5) throw bad();
    for (char c : e)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    return pow2(static_cast<unsigned>(std::stoul(e)));
  }

  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw bad();
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw bad();
  BigInt r;
  r.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return r;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

}  // namespace hefv
