#pragma once

// Exact scalars: arbitrary-precision integers and reduced rationals (GMP),
// primality and prime factorization.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heights/error.hpp"

namespace heights {

using BigInt = mpz_class;
using Rational = mpq_class;

// Reduced fraction from numerator/denominator. Rejects a zero denominator.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses an optionally signed decimal integer; `offset` positions errors.
inline BigInt parse_integer(std::string_view s, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  if (!all_digits(s.substr(i))) throw ParseError("expected an integer", offset + i);
  BigInt v(std::string(s.substr(i)), 10);
  return negative ? BigInt(-v) : v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// "a/b" or "a", optional sign on the numerator, surrounding whitespace ignored.
inline Rational parse_rational(std::string_view text) {
  const std::string_view s = detail::trim(text);
  const std::size_t lead = static_cast<std::size_t>(s.data() - text.data());
  if (s.empty()) throw ParseError("empty rational", lead);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s, lead));
  const BigInt num = detail::parse_integer(detail::trim(s.substr(0, slash)), lead);
  const std::string_view den_text = detail::trim(s.substr(slash + 1));
  if (!detail::all_digits(den_text)) throw ParseError("expected a positive denominator", lead + slash + 1);
  const BigInt den(std::string(den_text), 10);
  if (den == 0) throw ParseError("zero denominator", lead + slash + 1);
  return make_rational(num, den);
}

// ---------------------------------------------------------------------------
// Primality

namespace detail {

inline bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned long s, unsigned long base) {
  BigInt a(base);
  if (a % n == 0) return true;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

// Miller-Rabin with the first twelve prime bases: deterministic below
// 3.3e24, which covers every desk-scale input. Larger inputs additionally go
// through GMP's BPSW-based test.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned long p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (unsigned long base : kBases) {
    if (!detail::miller_rabin_round(n, d, s, base)) return false;
  }
  static const BigInt kDeterministicLimit("3317044064679887385961981", 10);
  if (n < kDeterministicLimit) return true;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// ---------------------------------------------------------------------------
// Factorization

// prime -> nonzero exponent, primes ascending.
using PrimeFactorization = std::map<BigInt, long>;

namespace detail {

// Pollard-Brent rho; returns a nontrivial factor of the composite n.
inline BigInt pollard_brent(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto step = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_composite(const BigInt& n, PrimeFactorization& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const BigInt f = pollard_brent(n);
  split_composite(f, out);
  split_composite(n / f, out);
}

}  // namespace detail

inline PrimeFactorization factorize(const BigInt& n) {
  if (n <= 0) throw DomainError("factorize requires a positive integer, got " + n.get_str());
  PrimeFactorization out;
  BigInt rest = n;
  auto strip = [&](unsigned long p) {
    long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out[BigInt(p)] = e;
  };
  strip(2);
  strip(3);
  constexpr unsigned long kTrialLimit = 1UL << 20;
  // Wheel over 6k +- 1; stop once the cofactor is 1, prime, or p^2 exceeds it.
  for (unsigned long p = 5; p <= kTrialLimit; p += 6) {
    if (rest == 1) break;
    if (BigInt(p) * p > rest) break;
    strip(p);
    strip(p + 2);
    if (p % 600 == 5 && rest > 1 && is_prime(rest)) break;
  }
  if (rest == 1) return out;
  if (BigInt(kTrialLimit) * kTrialLimit > rest || is_prime(rest)) {
    ++out[rest];
    return out;
  }
  detail::split_composite(rest, out);
  return out;
}

// Signed exponents: factorization of |num| / |den|.
inline PrimeFactorization factorize(const Rational& q) {
  if (q == 0) throw DomainError("factorize of zero");
  PrimeFactorization out = factorize(BigInt(abs(q.get_num())));
  for (const auto& [p, e] : factorize(q.get_den())) out[p] -= e;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline BigInt recompose(const PrimeFactorization& f) {
  BigInt out = 1;
  for (const auto& [p, e] : f) {
    if (e < 0) throw DomainError("recompose of a factorization with negative exponents");
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    out *= pe;
  }
  return out;
}

inline std::optional<BigInt> largest_prime_factor(const BigInt& n) {
  const PrimeFactorization f = factorize(BigInt(abs(n)));
  if (f.empty()) return std::nullopt;
  return f.rbegin()->first;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace heights
