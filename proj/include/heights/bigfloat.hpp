#pragma once

// Arbitrary-precision reals on top of MPFR. Every value carries its own
// precision; nothing here touches MPFR's process-wide default precision.
//
//   BigFloat        owning mpfr_t wrapper, round-to-nearest arithmetic
//   BigComplex      point complex number for iterative root refinement
//   RealEnclosure   closed interval [lo, hi], outward rounded
//   ComplexBox      rectangular complex interval built from two enclosures

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "heights/error.hpp"

namespace heights {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;
inline constexpr Precision kMaxPrecision = Precision{1} << 16;

class BigFloat {
 public:
  explicit BigFloat(Precision prec = kDefaultPrecision) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
  }
  BigFloat(long v, Precision prec) : BigFloat(prec) { mpfr_set_si(value_, v, MPFR_RNDN); }
  BigFloat(double v, Precision prec) : BigFloat(prec) { mpfr_set_d(value_, v, MPFR_RNDN); }
  BigFloat(const mpz_class& v, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(prec) {
    mpfr_set_z(value_, v.get_mpz_t(), rnd);
  }
  BigFloat(const mpq_class& v, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) : BigFloat(prec) {
    mpfr_set_q(value_, v.get_mpq_t(), rnd);
  }

  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    // Leave `other` as a valid 2-bit zero so its destructor stays cheap.
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  Precision precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  // Exact value as a rational; every finite binary float is a dyadic rational.
  mpq_class to_rational() const {
    mpz_class mant;
    const mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
    mpq_class out(mant);
    if (exp > 0) {
      mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
    } else if (exp < 0) {
      mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
    }
    return out;
  }

  // Scientific decimal string with `digits` significant digits, rounded in
  // direction `rnd` so that lower/upper ends can be printed outward.
  std::string to_decimal(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const {
    if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
    mpfr_asprintf(&buf, fmt, std::max(digits - 1, 0), value_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

 private:
  mpfr_t value_;
};

inline Precision joint_precision(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

inline int compare(const BigFloat& a, const mpq_class& b) { return mpfr_cmp_q(a.get(), b.get_mpq_t()); }

#define HEIGHTS_BIGFLOAT_BINOP(name, fn)                                          \
  inline BigFloat name(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {     \
    BigFloat r(joint_precision(a, b));                                            \
    fn(r.get(), a.get(), b.get(), rnd);                                           \
    return r;                                                                     \
  }
HEIGHTS_BIGFLOAT_BINOP(add, mpfr_add)
HEIGHTS_BIGFLOAT_BINOP(sub, mpfr_sub)
HEIGHTS_BIGFLOAT_BINOP(mul, mpfr_mul)
HEIGHTS_BIGFLOAT_BINOP(div, mpfr_div)
#undef HEIGHTS_BIGFLOAT_BINOP

inline BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, MPFR_RNDN); }
inline BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, MPFR_RNDN); }
inline BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, MPFR_RNDN); }
inline BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, MPFR_RNDN); }
inline BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline BigFloat abs(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline BigFloat hypot(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd = MPFR_RNDN) {
  BigFloat r(joint_precision(a, b));
  mpfr_hypot(r.get(), a.get(), b.get(), rnd);
  return r;
}

inline BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

// Copy of `a` rounded to precision `prec`.
inline BigFloat with_precision(const BigFloat& a, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) {
  BigFloat r(prec);
  mpfr_set(r.get(), a.get(), rnd);
  return r;
}

// ---------------------------------------------------------------------------

class BigComplex {
 public:
  explicit BigComplex(Precision prec = kDefaultPrecision) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  Precision precision() const { return std::max(re_.precision(), im_.precision()); }

  BigFloat abs() const { return hypot(re_, im_); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const BigFloat den = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
  }

 private:
  BigFloat re_;
  BigFloat im_;
};

// ---------------------------------------------------------------------------

// Closed real interval with outward-rounded endpoints.
class RealEnclosure {
 public:
  explicit RealEnclosure(Precision prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}
  RealEnclosure(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw InvariantViolation("enclosure with lo > hi");
  }

  static RealEnclosure point(const BigFloat& v) { return {v, v}; }
  static RealEnclosure exact(const mpz_class& v, Precision prec) {
    return {BigFloat(v, prec, MPFR_RNDD), BigFloat(v, prec, MPFR_RNDU)};
  }
  static RealEnclosure exact(const mpq_class& v, Precision prec) {
    return {BigFloat(v, prec, MPFR_RNDD), BigFloat(v, prec, MPFR_RNDU)};
  }
  static RealEnclosure exact(long v, Precision prec) { return exact(mpz_class(v), prec); }

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  Precision precision_bits() const { return std::max(lo_.precision(), hi_.precision()); }

  BigFloat width() const { return sub(hi_, lo_, MPFR_RNDU); }
  BigFloat midpoint() const {
    BigFloat s = add(lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
    return s;
  }

  bool width_at_most(const mpq_class& tol) const { return compare(width(), tol) <= 0; }
  bool contains(const mpq_class& v) const { return compare(lo_, v) <= 0 && compare(hi_, v) >= 0; }
  bool contains(const BigFloat& v) const { return lo_ <= v && v <= hi_; }
  bool overlaps(const RealEnclosure& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  // Certainly below / above another enclosure.
  bool strictly_below(const RealEnclosure& o) const { return hi_ < o.lo_; }

  // Strictly positive lower end.
  bool positive() const { return lo_.sign() > 0; }

 private:
  BigFloat lo_;
  BigFloat hi_;
};

namespace detail {

inline Precision joint(const RealEnclosure& a, const RealEnclosure& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

}  // namespace detail

inline RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b) {
  return {add(a.lo(), b.lo(), MPFR_RNDD), add(a.hi(), b.hi(), MPFR_RNDU)};
}

inline RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b) {
  return {sub(a.lo(), b.hi(), MPFR_RNDD), sub(a.hi(), b.lo(), MPFR_RNDU)};
}

inline RealEnclosure operator-(const RealEnclosure& a) { return {-a.hi(), -a.lo()}; }

inline RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b) {
  // Lower end is the minimum of the four down-rounded corner products, upper
  // end the maximum of the up-rounded ones.
  const BigFloat* xs[2] = {&a.lo(), &a.hi()};
  const BigFloat* ys[2] = {&b.lo(), &b.hi()};
  BigFloat lo = mul(*xs[0], *ys[0], MPFR_RNDD);
  BigFloat hi = mul(*xs[0], *ys[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      BigFloat d = mul(*xs[i], *ys[j], MPFR_RNDD);
      BigFloat u = mul(*xs[i], *ys[j], MPFR_RNDU);
      if (d < lo) lo = std::move(d);
      if (hi < u) hi = std::move(u);
    }
  }
  return {std::move(lo), std::move(hi)};
}

inline RealEnclosure operator/(const RealEnclosure& a, const RealEnclosure& b) {
  if (b.lo().sign() <= 0 && b.hi().sign() >= 0) {
    throw PrecisionError("interval division by an enclosure containing zero");
  }
  const Precision prec = detail::joint(a, b);
  BigFloat one(1L, prec);
  RealEnclosure inv(div(one, b.hi(), MPFR_RNDD), div(one, b.lo(), MPFR_RNDU));
  return a * inv;
}

// Square of an enclosure (tighter than a * a when it straddles zero).
inline RealEnclosure square(const RealEnclosure& a) {
  if (a.lo().sign() >= 0) return {mul(a.lo(), a.lo(), MPFR_RNDD), mul(a.hi(), a.hi(), MPFR_RNDU)};
  if (a.hi().sign() <= 0) return {mul(a.hi(), a.hi(), MPFR_RNDD), mul(a.lo(), a.lo(), MPFR_RNDU)};
  const BigFloat m = max(abs(a.lo()), abs(a.hi()));
  return {BigFloat(0L, a.precision_bits()), mul(m, m, MPFR_RNDU)};
}

inline RealEnclosure sqrt(const RealEnclosure& a) {
  if (a.lo().sign() < 0) throw DomainError("sqrt of an enclosure with negative part");
  BigFloat lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

// Componentwise max(c, x) for a constant c; monotone, so endpoints map directly.
inline RealEnclosure max_with(const RealEnclosure& a, long c) {
  BigFloat cv(c, a.precision_bits());
  return {max(a.lo(), cv), max(a.hi(), cv)};
}

// x^(1/n) for x >= 0, n >= 1.
inline RealEnclosure nth_root(const RealEnclosure& a, unsigned long n) {
  if (a.lo().sign() < 0) throw DomainError("root of an enclosure with negative part");
  BigFloat lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_rootn_ui(lo.get(), a.lo().get(), n, MPFR_RNDD);
  mpfr_rootn_ui(hi.get(), a.hi().get(), n, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline RealEnclosure pow(const RealEnclosure& a, unsigned long n) {
  if (a.lo().sign() < 0) throw DomainError("power of an enclosure with negative part");
  BigFloat lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_pow_ui(lo.get(), a.lo().get(), n, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), a.hi().get(), n, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline RealEnclosure log(const RealEnclosure& a) {
  if (a.lo().sign() <= 0) throw DomainError("log of a non-positive enclosure");
  BigFloat lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_log(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline RealEnclosure exp(const RealEnclosure& a) {
  BigFloat lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_exp(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

// Hull of two enclosures' maxima: [max lo, max hi].
inline RealEnclosure max(const RealEnclosure& a, const RealEnclosure& b) {
  return {max(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

// ---------------------------------------------------------------------------

struct ComplexBox {
  RealEnclosure re;
  RealEnclosure im;

  static ComplexBox point(const BigComplex& z) {
    return {RealEnclosure::point(z.re()), RealEnclosure::point(z.im())};
  }

  // Upper bound of |z| over the box.
  BigFloat abs_upper() const {
    const BigFloat x = max(abs(re.lo()), abs(re.hi()));
    const BigFloat y = max(abs(im.lo()), abs(im.hi()));
    return hypot(x, y, MPFR_RNDU);
  }

  // Lower bound of |z| over the box (zero if the box meets an axis through 0).
  BigFloat abs_lower() const {
    const Precision prec = std::max(re.precision_bits(), im.precision_bits());
    auto axis_gap = [&](const RealEnclosure& e) {
      if (e.lo().sign() > 0) return e.lo();
      if (e.hi().sign() < 0) return abs(e.hi());
      return BigFloat(0L, prec);
    };
    return hypot(axis_gap(re), axis_gap(im), MPFR_RNDD);
  }

  friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

}  // namespace heights
