#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "vclab/errors.hpp"

namespace vclab {

/// Exact arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Whitespace around the token is ignored.
inline Rational parse_rational(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty rational");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto check_digits = [&](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && part[0] == '-') i = 1;
    if (i >= part.size()) throw InvalidInput("bad rational '" + s + "'");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw InvalidInput("bad rational '" + s + "'");
  };
  if (slash == std::string::npos) {
    check_digits(s, true);
  } else {
    check_digits(s.substr(0, slash), true);
    check_digits(s.substr(slash + 1), false);
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidInput("bad rational '" + s + "'");
  if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// "p/q" in lowest terms; integers print without the denominator.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// 2^-k as an exact rational.
inline Rational pow2_neg(unsigned k) {
  mpz_class den = 1;
  den <<= k;
  return Rational(mpz_class(1), den);
}

/// base^k for non-negative k.
inline Rational pow(const Rational& base, unsigned k) {
  Rational r = 1;
  Rational b = base;
  while (k) {
    if (k & 1U) r *= b;
    b *= b;
    k >>= 1U;
  }
  return r;
}

struct RationalHash {
  std::size_t operator()(const Rational& q) const noexcept {
    auto limbs = [](mpz_srcptr z) {
      std::size_t h = static_cast<std::size_t>(mpz_sgn(z) + 1);
      const std::size_t n = mpz_size(z);
      for (std::size_t i = 0; i < n; ++i)
        h = h * 1000003U ^ static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i)));
      return h;
    };
    return limbs(q.get_num_mpz_t()) * 31U ^ limbs(q.get_den_mpz_t());
  }
};

}  // namespace vclab
