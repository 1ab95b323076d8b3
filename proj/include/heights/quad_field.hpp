#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt D), field norms, minimal
// polynomials, heights of field elements, and a bounded search for elements
// of small Weil height.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heights/bigfloat.hpp"
#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/measure.hpp"
#include "heights/polynomial.hpp"

namespace heights {

inline bool is_squarefree_integer(long d) {
  if (d == 0) return false;
  for (const auto& [p, e] : factorize(BigInt(d < 0 ? -d : d))) {
    if (e > 1) return false;
  }
  return true;
}

// a + b sqrt(D) with D >= 2 squarefree.
class QuadElement {
 public:
  QuadElement(Rational a, Rational b, long disc) : a_(std::move(a)), b_(std::move(b)), disc_(disc) {
    a_.canonicalize();
    b_.canonicalize();
    if (disc_ < 2 || !is_squarefree_integer(disc_)) {
      throw DomainError("discriminant must be a squarefree integer >= 2, got " + std::to_string(disc_));
    }
  }
  static QuadElement rational(const Rational& a, long disc) { return {a, Rational(0), disc}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long disc() const { return disc_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }

  QuadElement conjugate() const { return {a_, -b_, disc_}; }

  friend QuadElement operator+(const QuadElement& x, const QuadElement& y) {
    same_field(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, x.disc_};
  }
  friend QuadElement operator-(const QuadElement& x, const QuadElement& y) {
    same_field(x, y);
    return {x.a_ - y.a_, x.b_ - y.b_, x.disc_};
  }
  friend QuadElement operator*(const QuadElement& x, const QuadElement& y) {
    same_field(x, y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * x.disc_, x.a_ * y.b_ + x.b_ * y.a_, x.disc_};
  }
  friend QuadElement operator/(const QuadElement& x, const QuadElement& y) {
    same_field(x, y);
    if (y.is_zero()) throw DomainError("division by zero in Q(sqrt D)");
    const Rational n = y.a_ * y.a_ - y.b_ * y.b_ * y.disc_;
    const QuadElement num = x * y.conjugate();
    return {num.a_ / n, num.b_ / n, x.disc_};
  }

  friend bool operator==(const QuadElement& x, const QuadElement& y) {
    return x.disc_ == y.disc_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  // Canonical order: (a, b) lexicographic within a field.
  friend bool operator<(const QuadElement& x, const QuadElement& y) {
    if (x.disc_ != y.disc_) return x.disc_ < y.disc_;
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

 private:
  static void same_field(const QuadElement& x, const QuadElement& y) {
    if (x.disc_ != y.disc_) throw DomainError("mixed quadratic fields");
  }

  Rational a_;
  Rational b_;
  long disc_;
};

inline std::string to_string(const QuadElement& x) {
  if (x.b() == 0) return to_string(x.a());
  std::string out;
  if (x.a() != 0) out = to_string(x.a());
  const Rational mag = abs(x.b());
  if (x.b() < 0) {
    out += "-";
  } else if (!out.empty()) {
    out += "+";
  }
  if (mag != 1) out += to_string(mag);
  out += "√" + std::to_string(x.disc());
  return out;
}

// Norm to Q: a^2 - D b^2 (product of the two embeddings).
inline Rational qf_norm(const QuadElement& x) { return x.a() * x.a() - x.b() * x.b() * x.disc(); }

inline Rational qf_trace(const QuadElement& x) { return 2 * x.a(); }

// Primitive minimal polynomial over Z.
inline IntPolynomial qf_minimal_polynomial(const QuadElement& x) {
  if (x.is_zero()) throw DomainError("zero has no height");
  if (x.is_rational()) {
    return canonicalize_poly(IntPolynomial(std::vector<BigInt>{BigInt(-x.a().get_num()), x.a().get_den()}));
  }
  const RationalPoly p{qf_norm(x), -qf_trace(x), Rational(1)};
  return detail::to_canonical_int(p);
}

// Exact evaluation of an integer polynomial at a field element.
inline QuadElement evaluate_at(const IntPolynomial& f, const QuadElement& x) {
  QuadElement acc = QuadElement::rational(Rational(f.leading()), x.disc());
  for (std::size_t i = f.degree(); i-- > 0;) acc = acc * x + QuadElement::rational(Rational(f[i]), x.disc());
  return acc;
}

// M(r) = max(|num|, |den|) for rational r.
inline BigInt rational_mahler_measure(const Rational& r) {
  if (r == 0) throw DomainError("zero has no height");
  return std::max(BigInt(abs(r.get_num())), BigInt(r.get_den()));
}

inline RealEnclosure qf_mahler_measure(const QuadElement& x, const mpq_class& tol = default_tolerance()) {
  if (x.is_zero()) throw DomainError("zero has no height");
  if (x.is_rational()) return RealEnclosure::exact(rational_mahler_measure(x.a()), detail::starting_precision(tol));
  return mahler_measure(qf_minimal_polynomial(x), tol);
}

inline RealEnclosure qf_weil_height(const QuadElement& x, const mpq_class& tol = default_tolerance()) {
  if (x.is_rational()) return qf_mahler_measure(x, tol);
  return nth_root(qf_mahler_measure(x, tol), 2);
}

// ---------------------------------------------------------------------------
// Bounded enumeration of (u + v sqrt D) / w with |u|, |v| <= B, 1 <= w <= B.

struct QuadCandidate {
  QuadElement element;
  long u, v, w;
  RealEnclosure height;
};

namespace detail {

// Visits every nonzero (u, v, w) in tie-break order: w, |u|, |v|, then sign
// pattern (+,+), (+,-), (-,+), (-,-).
template <typename Visit>
void for_each_box_element(long disc, long bound, Visit&& visit) {
  for (long w = 1; w <= bound; ++w) {
    for (long au = 0; au <= bound; ++au) {
      for (long av = 0; av <= bound; ++av) {
        if (au == 0 && av == 0) continue;
        for (int pattern = 0; pattern < 4; ++pattern) {
          const bool neg_u = pattern >= 2, neg_v = pattern % 2 == 1;
          if ((neg_u && au == 0) || (neg_v && av == 0)) continue;
          const long u = neg_u ? -au : au, v = neg_v ? -av : av;
          visit(u, v, w, QuadElement(make_rational(u, w), make_rational(v, w), disc));
        }
      }
    }
  }
}

class HeightCache {
 public:
  explicit HeightCache(mpq_class tol) : tol_(std::move(tol)) {}
  const RealEnclosure& height(const QuadElement& x) {
    const IntPolynomial f = qf_minimal_polynomial(x);
    auto it = cache_.find(f);
    if (it == cache_.end()) it = cache_.emplace(f, qf_weil_height(x, tol_)).first;
    return it->second;
  }

 private:
  mpq_class tol_;
  std::map<IntPolynomial, RealEnclosure> cache_;
};

}  // namespace detail

// Element of smallest Weil height strictly above 1 + tol within the box. An
// upper estimate of the field's height infimum, not a certified minimum.
inline QuadCandidate qf_enumerate_min_height(long disc, long bound, const mpq_class& tol = default_tolerance()) {
  if (bound < 1) throw DomainError("bound must be >= 1");
  detail::HeightCache cache(tol);
  const mpq_class threshold = 1 + tol;
  std::optional<QuadCandidate> best;
  detail::for_each_box_element(disc, bound, [&](long u, long v, long w, const QuadElement& x) {
    const RealEnclosure& h = cache.height(x);
    if (compare(h.lo(), threshold) <= 0) return;
    if (!best || h.strictly_below(best->height)) best = QuadCandidate{x, u, v, w, h};
  });
  if (!best) throw SearchExhausted("no element of height above 1 + tol in the search box");
  return *best;
}

// Distinct nonzero elements other than 1 in the box with H <= max_height,
// in first-visit order.
inline std::vector<QuadCandidate> qf_enumerate_pool(long disc, long bound, const mpq_class& max_height,
                                                    const mpq_class& tol = default_tolerance()) {
  if (bound < 1) throw DomainError("bound must be >= 1");
  detail::HeightCache cache(tol);
  std::map<QuadElement, bool> seen;
  std::vector<QuadCandidate> out;
  detail::for_each_box_element(disc, bound, [&](long u, long v, long w, const QuadElement& x) {
    if (x.is_one() || seen.count(x)) return;
    seen.emplace(x, true);
    const RealEnclosure& h = cache.height(x);
    if (compare(h.lo(), max_height) <= 0) out.push_back(QuadCandidate{x, u, v, w, h});
  });
  return out;
}

// ---------------------------------------------------------------------------
// Text form: "a", "b√D", "a+b√D", "a-b√D", "(u+v√D)/w"; the radical may also
// be written sqrt(D) or sqrtD. Coefficients are integers or "p/q".

namespace detail {

class QuadParser {
 public:
  QuadParser(std::string_view text, long disc) : text_(text), disc_(disc) {}

  QuadElement parse() {
    skip_ws();
    QuadElement value = QuadElement::rational(0, disc_);
    if (!at_end() && peek() == '(') {
      ++pos_;
      value = sum();
      skip_ws();
      expect(')');
      skip_ws();
      if (!at_end()) {
        expect('/');
        skip_ws();
        const std::size_t at = pos_;
        const BigInt w = integer();
        if (w == 0) throw ParseError("zero denominator", at);
        value = value / QuadElement::rational(Rational(w), disc_);
      }
    } else {
      value = sum();
    }
    skip_ws();
    if (!at_end()) throw ParseError("trailing input", pos_);
    return value;
  }

 private:
  QuadElement sum() {
    QuadElement acc = QuadElement::rational(0, disc_);
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end() || peek() == ')') break;
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      QuadElement t = term();
      acc = negative ? acc - t : acc + t;
    }
    if (first) throw ParseError("empty quadratic element", pos_);
    return acc;
  }

  QuadElement term() {
    Rational coef = 1;
    bool has_coef = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      has_coef = true;
      const BigInt num = integer();
      BigInt den = 1;
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        den = integer();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      coef = make_rational(num, den);
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    if (radical_ahead()) {
      const std::size_t at = pos_;
      const long d = radical();
      if (d != disc_) {
        throw ParseError("radical √" + std::to_string(d) + " does not match disc " + std::to_string(disc_), at);
      }
      return QuadElement(0, coef, disc_);
    }
    if (!has_coef) throw ParseError("expected a coefficient or radical", pos_);
    return QuadElement::rational(coef, disc_);
  }

  bool radical_ahead() const {
    return text_.substr(pos_).starts_with("√") || text_.substr(pos_).starts_with("sqrt");
  }

  long radical() {
    if (text_.substr(pos_).starts_with("√")) {
      pos_ += std::string_view("√").size();
    } else {
      pos_ += 4;
    }
    skip_ws();
    const bool paren = !at_end() && peek() == '(';
    if (paren) ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    const BigInt d = integer();
    if (!d.fits_slong_p()) throw ParseError("radicand too large", at);
    skip_ws();
    if (paren) expect(')');
    return d.get_si();
  }

  BigInt integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", start);
    return BigInt(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void expect(char c) {
    if (at_end() || peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string_view text_;
  long disc_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline QuadElement parse_quad(std::string_view text, long disc) { return detail::QuadParser(text, disc).parse(); }

}  // namespace heights
