#pragma once

// Univariate integer polynomials, stored lowest degree first.

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heights/error.hpp"
#include "heights/exact.hpp"

namespace heights {

class IntPolynomial {
 public:
  // Trailing zeros are dropped; the zero polynomial is rejected.
  explicit IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) throw DomainError("zero polynomial");
  }
  IntPolynomial(std::initializer_list<long> coefficients)
      : IntPolynomial(std::vector<BigInt>(coefficients.begin(), coefficients.end())) {}

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
  const BigInt& leading() const { return coeffs_.back(); }
  const BigInt& constant() const { return coeffs_.front(); }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) g = gcd(g, c);
    return g;
  }

  bool is_monic() const { return leading() == 1; }

  // x^n f(1/x). Trailing (low-order) zeros vanish, so the degree can drop.
  IntPolynomial reversed() const {
    std::vector<BigInt> r(coeffs_.rbegin(), coeffs_.rend());
    while (r.size() > 1 && r.front() == 0) r.erase(r.begin());
    return IntPolynomial(std::move(r));
  }

  // f(-x).
  IntPolynomial negated_argument() const {
    std::vector<BigInt> r = coeffs_;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return IntPolynomial(std::move(r));
  }

  IntPolynomial operator-() const {
    std::vector<BigInt> r = coeffs_;
    for (auto& c : r) c = -c;
    return IntPolynomial(std::move(r));
  }

  // Nullopt for the derivative of a constant.
  std::optional<IntPolynomial> derivative() const {
    if (degree() == 0) return std::nullopt;
    std::vector<BigInt> r(degree());
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(r));
  }

  template <typename T>
  T evaluate(const T& x) const {
    T acc(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + T(coeffs_[i]);
    return acc;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator<(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    return std::lexicographical_compare(a.coeffs_.rbegin(), a.coeffs_.rend(), b.coeffs_.rbegin(), b.coeffs_.rend());
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPolynomial(std::move(r));
  }

 private:
  std::vector<BigInt> coeffs_;
};

// Primitive part with positive leading coefficient.
inline IntPolynomial canonicalize_poly(const IntPolynomial& f) {
  const BigInt c = f.content();
  std::vector<BigInt> r = f.coefficients();
  const BigInt scale = f.leading() < 0 ? BigInt(-c) : c;
  for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), scale.get_mpz_t());
  return IntPolynomial(std::move(r));
}

inline bool is_canonical(const IntPolynomial& f) { return f.leading() > 0 && f.content() == 1; }

// ---------------------------------------------------------------------------
// Text form

inline std::string print_polynomial(const IntPolynomial& f) {
  std::string out;
  for (std::size_t i = f.degree() + 1; i-- > 0;) {
    const BigInt& c = f[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = abs(c);
    if (negative) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += 'x';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

// Comma list "c0,c1,...,cn".
inline std::string print_coefficient_list(const IntPolynomial& f) {
  std::string out;
  for (std::size_t i = 0; i <= f.degree(); ++i) {
    if (i) out += ',';
    out += f[i].get_str();
  }
  return out;
}

namespace detail {

class PolyTextParser {
 public:
  explicit PolyTextParser(std::string_view text) : text_(text) {}

  IntPolynomial parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    std::map<std::size_t, BigInt> terms;
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const std::size_t term_start = pos_;
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;

      std::optional<BigInt> coef;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) coef = digits();
      skip_ws();
      if (!at_end() && (peek() == '.' || peek() == '/')) throw ParseError("non-integer coefficient", pos_);
      bool has_x = false;
      if (coef && !at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || peek() != 'x') throw ParseError("expected 'x' after '*'", pos_);
      }
      std::size_t exponent = 0;
      if (!at_end() && peek() == 'x') {
        has_x = true;
        ++pos_;
        exponent = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError("expected exponent", pos_);
          }
          const std::size_t exp_pos = pos_;
          const BigInt e = digits();
          if (!e.fits_ulong_p() || e > 100000) throw ParseError("exponent too large", exp_pos);
          exponent = e.get_ui();
        }
      }
      if (!coef && !has_x) {
        throw ParseError(at_end() ? "dangling sign" : "unexpected character '" + std::string(1, peek()) + "'",
                         at_end() ? term_start : pos_);
      }
      BigInt value = coef.value_or(BigInt(1));
      if (negative) value = -value;
      terms[exponent] += value;
    }
    std::size_t top = terms.empty() ? 0 : terms.rbegin()->first;
    std::vector<BigInt> coeffs(top + 1, 0);
    for (const auto& [e, c] : terms) coeffs[e] = c;
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) throw ParseError("zero polynomial", 0);
    return IntPolynomial(std::move(coeffs));
  }

  IntPolynomial parse_list() {
    std::vector<BigInt> coeffs;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text_.find(',', start);
      const std::string_view item = text_.substr(start, comma == std::string_view::npos ? text_.npos : comma - start);
      const std::string_view t = trim(item);
      const std::size_t offset = start + static_cast<std::size_t>(t.data() - item.data());
      if (t.empty()) throw ParseError("empty coefficient", start);
      if (t.find_first_of("./") != std::string_view::npos) {
        throw ParseError("non-integer coefficient", offset + t.find_first_of("./"));
      }
      coeffs.push_back(parse_integer(t, offset));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) throw ParseError("zero polynomial", 0);
    return IntPolynomial(std::move(coeffs));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  BigInt digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return BigInt(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Accepts "x^2-2x-4" style expressions (implicit coefficient and exponent 1,
// duplicate exponents summed) or a comma list lowest degree first.
inline IntPolynomial parse_polynomial(std::string_view text) {
  detail::PolyTextParser parser(text);
  if (text.find(',') != std::string_view::npos) return parser.parse_list();
  return parser.parse();
}

// ---------------------------------------------------------------------------
// Arithmetic over Q, used for gcds and exact division tests.

using RationalPoly = std::vector<Rational>;  // lowest degree first, trimmed

namespace detail {

inline void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RationalPoly to_rational(const IntPolynomial& f) {
  return RationalPoly(f.coefficients().begin(), f.coefficients().end());
}

// Clears denominators and returns the canonical integer polynomial.
inline IntPolynomial to_canonical_int(const RationalPoly& p) {
  BigInt den = 1;
  for (const auto& c : p) den = lcm(den, c.get_den());
  std::vector<BigInt> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c.get_num() * (den / c.get_den()));
  return canonicalize_poly(IntPolynomial(std::move(out)));
}

inline std::pair<RationalPoly, RationalPoly> divmod(RationalPoly num, const RationalPoly& den) {
  if (den.empty()) throw DomainError("polynomial division by zero");
  trim(num);
  if (num.size() < den.size()) return {RationalPoly{}, num};
  RationalPoly quot(num.size() - den.size() + 1);
  const Rational& lead = den.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = num[k + den.size() - 1] / lead;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q * den[j];
  }
  num.resize(den.size() - 1);
  trim(num);
  trim(quot);
  return {quot, num};
}

}  // namespace detail

// Canonical gcd over Z[x] (primitive, positive leading coefficient).
inline IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  RationalPoly x = detail::to_rational(a), y = detail::to_rational(b);
  while (!y.empty()) {
    RationalPoly r = detail::divmod(x, y).second;
    x = std::move(y);
    // Keep coefficient growth in check by rescaling to monic.
    if (!r.empty()) {
      const Rational lead = r.back();
      for (auto& c : r) c /= lead;
    }
    y = std::move(r);
  }
  return detail::to_canonical_int(x);
}

// Quotient f / g when g divides f in Z[x]; nullopt otherwise.
inline std::optional<IntPolynomial> exact_quotient(const IntPolynomial& f, const IntPolynomial& g) {
  if (g.degree() > f.degree()) return std::nullopt;
  auto [q, r] = detail::divmod(detail::to_rational(f), detail::to_rational(g));
  if (!r.empty()) return std::nullopt;
  std::vector<BigInt> out;
  out.reserve(q.size());
  for (const auto& c : q) {
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return IntPolynomial(std::move(out));
}

inline bool is_squarefree(const IntPolynomial& f) {
  const auto df = f.derivative();
  if (!df) return true;
  return poly_gcd(f, *df).degree() == 0;
}

namespace detail {

inline RationalPoly make_monic(RationalPoly p) {
  trim(p);
  if (!p.empty()) {
    const Rational lead = p.back();
    for (auto& c : p) c /= lead;
  }
  return p;
}

inline RationalPoly gcd_q(RationalPoly x, RationalPoly y) {
  trim(x);
  trim(y);
  while (!y.empty()) {
    RationalPoly r = make_monic(divmod(x, y).second);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(std::move(x));
}

inline RationalPoly derivative_q(const RationalPoly& p) {
  RationalPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

inline RationalPoly sub_q(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline RationalPoly divexact_q(const RationalPoly& a, const RationalPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw InvariantViolation("inexact polynomial division");
  return q;
}

}  // namespace detail

// Yun's algorithm: canonical squarefree factors g_i with multiplicities i such
// that canonicalize(f) = prod g_i^i up to sign. Constant f gives an empty list.
inline std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition(const IntPolynomial& f) {
  using namespace detail;
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  const RationalPoly fq = to_rational(f);
  const RationalPoly df = derivative_q(fq);
  if (df.empty()) return out;
  const RationalPoly a0 = gcd_q(fq, df);
  RationalPoly b = divexact_q(fq, a0);
  RationalPoly c = divexact_q(df, a0);
  RationalPoly d = sub_q(c, derivative_q(b));
  for (unsigned i = 1; b.size() > 1; ++i) {
    const RationalPoly a = gcd_q(b, d);
    if (a.size() > 1) out.emplace_back(to_canonical_int(a), i);
    b = divexact_q(b, a);
    c = divexact_q(d, a);
    d = sub_q(c, derivative_q(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

inline unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Phi_n via x^n - 1 = prod_{d | n} Phi_d.
inline IntPolynomial cyclotomic(unsigned long n) {
  if (n == 0) throw DomainError("cyclotomic index must be positive");
  std::vector<BigInt> xn(n + 1, 0);
  xn[0] = -1;
  xn[n] = 1;
  IntPolynomial acc(std::move(xn));
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d == 0) acc = *exact_quotient(acc, cyclotomic(d));
  }
  return acc;
}

}  // namespace heights
