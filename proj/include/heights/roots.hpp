#pragma once

// Certified complex root isolation for squarefree integer polynomials.
//
// Approximations come from Aberth's simultaneous iteration (a double-precision
// seed, then refinement in MPFR at the working precision). They are certified
// a posteriori with Weierstrass-correction inclusion disks:
//
//   W_i = f(z_i) / (a_n * prod_{j != i} (z_i - z_j)),   r_i = n |W_i|.
//
// The union of the disks D(z_i, r_i) contains every root, and a connected
// component made of k disks holds exactly k roots; pairwise disjoint disks
// therefore isolate one simple root each. W_i is bounded with outward-rounded
// interval arithmetic, so the certificate does not depend on rounding luck.
// On failure the precision doubles, up to kMaxPrecision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "heights/bigfloat.hpp"
#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/polynomial.hpp"

namespace heights {

struct RootBox {
  BigComplex center;
  BigFloat radius;
  unsigned multiplicity = 1;

  // Bounds on |z| over the disk.
  BigFloat modulus_lower() const {
    BigFloat m = hypot(center.re(), center.im(), MPFR_RNDD);
    BigFloat lo = sub(m, radius, MPFR_RNDD);
    return lo.sign() < 0 ? BigFloat(0L, lo.precision()) : lo;
  }
  BigFloat modulus_upper() const { return add(hypot(center.re(), center.im(), MPFR_RNDU), radius, MPFR_RNDU); }
};

namespace detail {

using DComplex = std::complex<double>;

// Fujiwara's bound on root moduli: 2 max_k |a_{n-k}/a_n|^{1/k}.
inline double root_radius_bound(const IntPolynomial& f) {
  const std::size_t n = f.degree();
  const double lead = std::abs(f.leading().get_d());
  double bound = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    double ratio = std::abs(f[n - k].get_d()) / lead;
    if (k == n) ratio /= 2;
    if (ratio > 0) bound = std::max(bound, std::pow(ratio, 1.0 / static_cast<double>(k)));
  }
  return std::max(2 * bound, 1e-3);
}

inline std::vector<DComplex> initial_guesses(const IntPolynomial& f) {
  const std::size_t n = f.degree();
  const double radius = root_radius_bound(f);
  std::vector<DComplex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius * 0.9, angle);
  }
  return z;
}

// Aberth iteration in doubles. Returns whatever approximations it reached;
// accuracy is irrelevant to correctness, only to how much refinement follows.
inline std::vector<DComplex> aberth_double(const IntPolynomial& f, std::vector<DComplex> z) {
  const std::size_t n = f.degree();
  std::vector<double> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = f[i].get_d();
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      DComplex p = c[n], dp = 0;
      for (std::size_t k = n; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (p == DComplex(0)) continue;
      const DComplex w = p / dp;
      DComplex s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      const DComplex corr = w / (1.0 - w * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) return z;
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

struct HornerPair {
  BigComplex value;
  BigComplex slope;
};

inline HornerPair horner_with_derivative(const std::vector<BigFloat>& coeffs, const BigComplex& z) {
  const Precision prec = z.precision();
  const std::size_t n = coeffs.size() - 1;
  BigComplex p(coeffs[n], BigFloat(0L, prec));
  BigComplex dp(BigFloat(0L, prec), BigFloat(0L, prec));
  for (std::size_t k = n; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + BigComplex(coeffs[k], BigFloat(0L, prec));
  }
  return {std::move(p), std::move(dp)};
}

// Holds the current approximations of one polynomial across precision steps.
class RootRefiner {
 public:
  explicit RootRefiner(IntPolynomial f) : f_(std::move(f)) {
    if (f_.degree() == 0) throw DomainError("root isolation needs degree >= 1");
  }

  const IntPolynomial& polynomial() const { return f_; }
  const std::vector<BigComplex>& approximations() const { return z_; }

  // Refines the approximations at `prec` bits.
  void refine(Precision prec) {
    const std::size_t n = f_.degree();
    if (z_.empty()) {
      std::vector<DComplex> seed = aberth_double(f_, initial_guesses(f_));
      for (const auto& s : seed) {
        const bool ok = std::isfinite(s.real()) && std::isfinite(s.imag());
        z_.emplace_back(BigFloat(ok ? s.real() : 0.5, prec), BigFloat(ok ? s.imag() : 0.5, prec));
      }
    } else {
      for (auto& z : z_) z = BigComplex(with_precision(z.re(), prec), with_precision(z.im(), prec));
    }
    std::vector<BigFloat> coeffs;
    coeffs.reserve(n + 1);
    for (const auto& c : f_.coefficients()) coeffs.emplace_back(c, prec);

    const BigFloat one(1L, prec);
    BigFloat eps(1L, prec);
    mpfr_div_2si(eps.get(), eps.get(), static_cast<long>(prec) - 8, MPFR_RNDN);
    const int max_iter = 60 + static_cast<int>(4 * n);
    for (int iter = 0; iter < max_iter; ++iter) {
      bool converged = true;
      for (std::size_t i = 0; i < n; ++i) {
        HornerPair hp = horner_with_derivative(coeffs, z_[i]);
        if (hp.value.is_zero()) continue;
        if (hp.slope.is_zero()) {
          nudge(i, prec);
          converged = false;
          continue;
        }
        const BigComplex w = hp.value / hp.slope;
        BigComplex s(prec);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          BigComplex d = z_[i] - z_[j];
          if (d.is_zero()) {
            nudge(i, prec);
            d = z_[i] - z_[j];
          }
          s = s + BigComplex(one, BigFloat(0L, prec)) / d;
        }
        const BigComplex denom = BigComplex(one, BigFloat(0L, prec)) - w * s;
        const BigComplex corr = denom.is_zero() ? w : w / denom;
        if (!corr.re().is_finite() || !corr.im().is_finite()) {
          nudge(i, prec);
          converged = false;
          continue;
        }
        z_[i] = z_[i] - corr;
        const BigFloat scale = max(one, z_[i].abs());
        if (corr.abs() > eps * scale) converged = false;
      }
      if (converged) break;
    }
  }

  // Certified radii at `prec` bits, or nullopt if the disks are not pairwise
  // disjoint (or a bound is not finite).
  std::optional<std::vector<BigFloat>> certify(Precision prec) const {
    const std::size_t n = f_.degree();
    std::vector<RealEnclosure> coeffs;
    coeffs.reserve(n + 1);
    for (const auto& c : f_.coefficients()) coeffs.push_back(RealEnclosure::exact(c, prec));
    const BigFloat lead_lower = abs(BigFloat(f_.leading(), prec, f_.leading() > 0 ? MPFR_RNDD : MPFR_RNDU));
    const RealEnclosure zero = RealEnclosure::exact(0L, prec);

    std::vector<ComplexBox> points;
    points.reserve(n);
    for (const auto& z : z_) points.push_back(ComplexBox::point(z));

    // Pairwise distance lower bounds, reused for the disjointness check.
    std::vector<std::vector<BigFloat>> gap(n, std::vector<BigFloat>(n, BigFloat(prec)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        gap[i][j] = (points[i] - points[j]).abs_lower();
        if (gap[i][j].sign() <= 0) return std::nullopt;
        gap[j][i] = gap[i][j];
      }
    }

    std::vector<BigFloat> radii;
    radii.reserve(n);
    const BigFloat degree(static_cast<long>(n), prec);
    for (std::size_t i = 0; i < n; ++i) {
      ComplexBox value{coeffs[n], zero};
      for (std::size_t k = n; k-- > 0;) value = value * points[i] + ComplexBox{coeffs[k], zero};
      BigFloat numerator = mul(value.abs_upper(), degree, MPFR_RNDU);
      BigFloat denominator = lead_lower;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denominator = mul(denominator, gap[i][j], MPFR_RNDD);
      }
      if (denominator.sign() <= 0) return std::nullopt;
      BigFloat r = div(numerator, denominator, MPFR_RNDU);
      if (!r.is_finite()) return std::nullopt;
      radii.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!(add(radii[i], radii[j], MPFR_RNDU) < gap[i][j])) return std::nullopt;
      }
    }
    return radii;
  }

 private:
  void nudge(std::size_t i, Precision prec) {
    BigFloat delta(1L, prec);
    mpfr_div_2si(delta.get(), delta.get(), static_cast<long>(prec / 4) + static_cast<long>(i), MPFR_RNDN);
    z_[i] = BigComplex(z_[i].re() + delta, z_[i].im() + delta);
  }

  IntPolynomial f_;
  std::vector<BigComplex> z_;
};

// Working precision sufficient to reach a width `tol` in the common case.
inline Precision starting_precision(const mpq_class& tol) {
  const double t = tol.get_d();
  if (!(t > 0)) throw DomainError("tolerance must be positive");
  const double bits = -std::log2(t);
  Precision p = kDefaultPrecision;
  while (p < kMaxPrecision && static_cast<double>(p) < bits + 64) p *= 2;
  return p;
}

inline std::vector<RootBox> make_boxes(const RootRefiner& refiner, const std::vector<BigFloat>& radii) {
  std::vector<RootBox> out;
  const auto& z = refiner.approximations();
  out.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out.push_back(RootBox{z[i], radii[i], 1});
  std::sort(out.begin(), out.end(), [](const RootBox& a, const RootBox& b) {
    const int c = compare(a.center.re(), b.center.re());
    return c != 0 ? c < 0 : a.center.im() < b.center.im();
  });
  return out;
}

}  // namespace detail

inline const mpq_class& default_tolerance() {
  static const mpq_class tol(1, BigInt("1000000000000"));
  return tol;
}

// Isolating disks for every root of a squarefree polynomial, each of radius
// <= tol, sorted by (real, imaginary) part of the centers.
inline std::vector<RootBox> certified_roots(const IntPolynomial& f, const mpq_class& tol = default_tolerance()) {
  if (f.degree() == 0) throw DomainError("certified_roots needs degree >= 1");
  if (tol <= 0) throw DomainError("tolerance must be positive");
  if (!is_squarefree(f)) throw DomainError("certified_roots requires a squarefree polynomial: " + print_polynomial(f));
  detail::RootRefiner refiner(f);
  for (Precision prec = detail::starting_precision(tol); prec <= kMaxPrecision; prec *= 2) {
    refiner.refine(prec);
    if (auto radii = refiner.certify(prec)) {
      const bool small = std::all_of(radii->begin(), radii->end(),
                                     [&](const BigFloat& r) { return compare(r, tol) <= 0; });
      if (small) return detail::make_boxes(refiner, *radii);
    }
  }
  throw PrecisionError("root certification failed below " + std::to_string(kMaxPrecision) + " bits for " +
                       print_polynomial(f));
}

}  // namespace heights
