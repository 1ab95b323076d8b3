#pragma once

// The group of surd cosets: formal products prod p^(r_p) over primes with
// rational exponents, taken modulo torsion. This is the Q-vector subspace of
// Qbar^x / tor generated by the primes, and every quantity computed here (H,
// the Kummer degree d, and M_infinity) is constant on torsion cosets, so no
// sign or root of unity is stored.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "heights/bigfloat.hpp"
#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/polynomial.hpp"

namespace heights {

// prime -> exponent, primes ascending, no zero exponents.
using FormalProduct = std::map<BigInt, Rational>;

namespace detail {

inline BigInt exponent_denominator_lcm(const FormalProduct& f) {
  BigInt n = 1;
  for (const auto& [p, r] : f) n = lcm(n, r.get_den());
  return n;
}

// prod p^(r_p * n) for integral r_p * n >= 0.
inline BigInt integral_power_product(const FormalProduct& f, const BigInt& n) {
  BigInt out = 1;
  for (const auto& [p, r] : f) {
    const Rational e = r * n;
    if (e.get_den() != 1 || e < 0) throw InvariantViolation("non-integral exponent in power product");
    if (!e.get_num().fits_ulong_p()) throw DomainError("exponent too large for exact evaluation");
    out *= pow(p, e.get_num().get_ui());
  }
  return out;
}

inline RealEnclosure log_enclosure(const FormalProduct& f, Precision prec) {
  RealEnclosure acc = RealEnclosure::exact(0L, prec);
  for (const auto& [p, r] : f) acc = acc + RealEnclosure::exact(r, prec) * log(RealEnclosure::exact(p, prec));
  return acc;
}

}  // namespace detail

// Exact three-way comparison of two formal products with nonnegative
// exponents. Logarithm enclosures settle most cases; ties fall back to clearing
// denominators and comparing integers.
inline int compare_formal(const FormalProduct& a, const FormalProduct& b) {
  if (a == b) return 0;
  const RealEnclosure la = detail::log_enclosure(a, 128), lb = detail::log_enclosure(b, 128);
  if (la.strictly_below(lb)) return -1;
  if (lb.strictly_below(la)) return 1;
  const BigInt n = lcm(detail::exponent_denominator_lcm(a), detail::exponent_denominator_lcm(b));
  const BigInt x = detail::integral_power_product(a, n), y = detail::integral_power_product(b, n);
  return x < y ? -1 : (y < x ? 1 : 0);
}

inline std::string formal_to_string(const FormalProduct& f) {
  if (f.empty()) return "1";
  std::string out;
  for (const auto& [p, r] : f) {
    if (!out.empty()) out += " * ";
    out += p.get_str();
    if (r != 1) out += "^" + to_string(r);
  }
  return out;
}

inline RealEnclosure formal_enclosure(const FormalProduct& f, Precision prec = kDefaultPrecision) {
  if (f.empty()) return RealEnclosure::exact(1L, prec);
  return exp(detail::log_enclosure(f, prec + 32));
}

// Exact value of H for a surd coset: max of the positive-exponent part and
// the reciprocal of the negative-exponent part.
struct SurdHeightValue {
  FormalProduct num_part;  // prod_{r_p > 0} p^(r_p)
  FormalProduct den_part;  // prod_{r_p < 0} p^(-r_p)

  const FormalProduct& value() const { return compare_formal(num_part, den_part) >= 0 ? num_part : den_part; }
  RealEnclosure float_view(Precision prec = kDefaultPrecision) const { return formal_enclosure(value(), prec); }
  bool is_one() const { return num_part.empty() && den_part.empty(); }

  friend int compare(const SurdHeightValue& a, const SurdHeightValue& b) { return compare_formal(a.value(), b.value()); }
  friend bool operator==(const SurdHeightValue& a, const SurdHeightValue& b) { return compare(a, b) == 0; }
  friend bool operator<(const SurdHeightValue& a, const SurdHeightValue& b) { return compare(a, b) < 0; }
};

inline std::string to_string(const SurdHeightValue& h) { return formal_to_string(h.value()); }

inline FormalProduct scale_exponents(const FormalProduct& f, const Rational& s) {
  FormalProduct out;
  if (s == 0) return out;
  for (const auto& [p, r] : f) out.emplace(p, r * s);
  return out;
}

class SurdCoset {
 public:
  SurdCoset() = default;

  // Zero exponents are dropped; every key must be prime.
  explicit SurdCoset(FormalProduct exponents) : exponents_(std::move(exponents)) {
    for (auto& [p, r] : exponents_) r.canonicalize();
    std::erase_if(exponents_, [](const auto& kv) { return kv.second == 0; });
    for (const auto& [p, r] : exponents_) {
      if (!is_prime(p)) throw DomainError("surd support must be prime, got " + p.get_str());
    }
  }

  static SurdCoset identity() { return {}; }

  const FormalProduct& exponents() const { return exponents_; }
  bool is_identity() const { return exponents_.empty(); }

  friend SurdCoset operator*(const SurdCoset& x, const SurdCoset& y) {
    FormalProduct out = x.exponents_;
    for (const auto& [p, r] : y.exponents_) out[p] += r;
    SurdCoset c;
    c.exponents_ = std::move(out);
    std::erase_if(c.exponents_, [](const auto& kv) { return kv.second == 0; });
    return c;
  }

  SurdCoset inverse() const {
    SurdCoset c;
    c.exponents_ = scale_exponents(exponents_, Rational(-1));
    return c;
  }

  friend SurdCoset operator/(const SurdCoset& x, const SurdCoset& y) { return x * y.inverse(); }

  SurdCoset pow(const Rational& r) const {
    if (r == 0) throw DomainError("surd exponent must be nonzero");
    SurdCoset c;
    c.exponents_ = scale_exponents(exponents_, r);
    return c;
  }

  friend bool operator==(const SurdCoset& x, const SurdCoset& y) { return x.exponents_ == y.exponents_; }
  friend bool operator<(const SurdCoset& x, const SurdCoset& y) { return x.exponents_ < y.exponents_; }

 private:
  FormalProduct exponents_;
};

// Coset of x^(1/d); the sign of x is torsion and disappears.
inline SurdCoset surd_from_rational(const Rational& x, unsigned long d = 1) {
  if (x == 0) throw DomainError("zero is not in the multiplicative group");
  if (d == 0) throw DomainError("root index must be positive");
  FormalProduct f;
  for (const auto& [p, e] : factorize(x)) f.emplace(p, Rational(e, static_cast<long>(d)));
  for (auto& [p, r] : f) r.canonicalize();
  return SurdCoset(std::move(f));
}

inline SurdCoset surd_mul(const SurdCoset& x, const SurdCoset& y) { return x * y; }
inline SurdCoset surd_pow(const SurdCoset& x, const Rational& r) { return x.pow(r); }

// Kummer degree: lcm of the reduced exponent denominators. For the positive
// representative a^(1/N) (a = prod p^(N r_p)) no prime q | N divides every
// N r_p, so x^N - a is irreducible and N is the minimal degree in the coset.
inline unsigned long surd_degree(const SurdCoset& x) {
  const BigInt n = detail::exponent_denominator_lcm(x.exponents());
  if (!n.fits_ulong_p()) throw DomainError("surd degree too large");
  return n.get_ui();
}

// The rational a > 0 with coset(x) = coset(a^(1/N)), N = surd_degree(x).
inline Rational surd_radicand(const SurdCoset& x) {
  const BigInt n = surd_degree(x);
  FormalProduct num, den;
  for (const auto& [p, r] : x.exponents()) (r > 0 ? num : den).emplace(p, r > 0 ? r : Rational(-r));
  return make_rational(detail::integral_power_product(num, n), detail::integral_power_product(den, n));
}

// Minimal polynomial den * x^N - num of the positive representative.
inline IntPolynomial surd_minimal_polynomial(const SurdCoset& x) {
  const unsigned long n = surd_degree(x);
  const Rational a = surd_radicand(x);
  std::vector<BigInt> c(n + 1, 0);
  c[0] = -a.get_num();
  c[n] = a.get_den();
  return IntPolynomial(std::move(c));
}

inline SurdHeightValue surd_weil_height(const SurdCoset& x) {
  SurdHeightValue h;
  for (const auto& [p, r] : x.exponents()) {
    if (r > 0) {
      h.num_part.emplace(p, r);
    } else {
      h.den_part.emplace(p, -r);
    }
  }
  return h;
}

// Largest prime in the support; 1 for the identity (torsion) coset.
inline BigInt surd_m_infinity(const SurdCoset& x) {
  if (x.is_identity()) return 1;
  return x.exponents().rbegin()->first;
}

// H(x)^d(x), well defined on torsion cosets.
inline SurdHeightValue surd_h_to_the_d(const SurdCoset& x) {
  const SurdHeightValue h = surd_weil_height(x);
  const Rational d(static_cast<long>(surd_degree(x)));
  return {scale_exponents(h.num_part, d), scale_exponents(h.den_part, d)};
}

inline SurdHeightValue pow(const SurdHeightValue& h, const Rational& r) {
  if (r < 0) throw DomainError("height powers must be nonnegative");
  return {scale_exponents(h.num_part, r), scale_exponents(h.den_part, r)};
}

inline std::string to_string(const SurdCoset& x) { return formal_to_string(x.exponents()); }

// ---------------------------------------------------------------------------
// Text form "p1^e1 * p2^e2 * ...", e.g. "2^3/2 * 3^-1". Bases may be any
// positive integer (they are factored); "1" is the identity. Exponents may be
// parenthesised: "12^(-1/2)".

namespace detail {

class SurdParser {
 public:
  explicit SurdParser(std::string_view text, std::size_t offset = 0) : text_(text), offset_(offset) {}

  SurdCoset parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty surd", offset_ + pos_);
    SurdCoset acc;
    while (true) {
      skip_ws();
      const std::size_t base_at = pos_;
      const BigInt base = integer();
      if (base == 0) throw ParseError("zero base", offset_ + base_at);
      Rational e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        e = exponent();
      }
      if (base != 1 && e != 0) acc = acc * surd_from_rational(Rational(base)).pow(e);
      skip_ws();
      if (at_end()) break;
      if (peek() != '*') throw ParseError("expected '*'", offset_ + pos_);
      ++pos_;
    }
    return acc;
  }

 private:
  Rational exponent() {
    const bool paren = !at_end() && peek() == '(';
    if (paren) {
      ++pos_;
      skip_ws();
    }
    bool negative = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      negative = peek() == '-';
      ++pos_;
    }
    const BigInt num = integer();
    BigInt den = 1;
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      den = integer();
      if (den == 0) throw ParseError("zero exponent denominator", offset_ + at);
    }
    if (paren) {
      skip_ws();
      if (at_end() || peek() != ')') throw ParseError("expected ')'", offset_ + pos_);
      ++pos_;
    }
    return make_rational(negative ? BigInt(-num) : num, den);
  }

  BigInt integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", offset_ + start);
    return BigInt(std::string(text_.substr(start, pos_ - start)), 10);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SurdCoset parse_surd(std::string_view text) { return detail::SurdParser(text).parse(); }

}  // namespace heights
