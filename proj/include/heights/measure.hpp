#pragma once

// Mahler measure and Weil height of algebraic numbers given by integer
// polynomials, with certified enclosures:
//
//   M(f) = |a_n| * prod_i max(1, |alpha_i|),     H(alpha) = M(f)^(1/deg f).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "heights/bigfloat.hpp"
#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/polynomial.hpp"
#include "heights/roots.hpp"

namespace heights {

namespace detail {

// |a_n| * prod max(1, |root|) over certified disks.
inline RealEnclosure measure_from_boxes(const BigInt& leading, const std::vector<BigFloat>& radii,
                                        const std::vector<BigComplex>& centers, Precision prec) {
  RealEnclosure acc = RealEnclosure::exact(BigInt(abs(leading)), prec);
  const BigFloat one(1L, prec);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const RootBox box{centers[i], radii[i], 1};
    acc = acc * RealEnclosure(max(box.modulus_lower(), one), max(box.modulus_upper(), one));
  }
  return acc;
}

// x^k factors removed (they contribute max(1, 0) = 1).
inline IntPolynomial strip_zero_roots(const IntPolynomial& f) {
  std::vector<BigInt> c = f.coefficients();
  std::size_t k = 0;
  while (c[k] == 0) ++k;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  return IntPolynomial(std::move(c));
}

}  // namespace detail

// Enclosure of width <= tol containing M(f). For M(alpha) the input must be
// the minimal polynomial of alpha (irreducibility is not verified).
// Repeated factors are handled through the squarefree decomposition.
inline RealEnclosure mahler_measure(const IntPolynomial& f, const mpq_class& tol = default_tolerance()) {
  if (tol <= 0) throw DomainError("tolerance must be positive");
  const IntPolynomial g = detail::strip_zero_roots(f);
  const BigInt content = g.content();
  Precision prec = detail::starting_precision(tol);
  if (g.degree() == 0) return RealEnclosure::exact(BigInt(abs(g.leading())), prec);

  std::vector<std::pair<detail::RootRefiner, unsigned>> parts;
  if (is_squarefree(g)) {
    parts.emplace_back(detail::RootRefiner(g), 1u);
  } else {
    for (auto& [factor, mult] : squarefree_decomposition(g)) parts.emplace_back(detail::RootRefiner(factor), mult);
  }
  // Leading coefficient of g = content * sign * prod lead(g_i)^i; the factor
  // leads enter through measure_from_boxes, the content separately.
  const bool single = parts.size() == 1 && parts.front().second == 1;
  for (; prec <= kMaxPrecision; prec *= 2) {
    RealEnclosure acc = RealEnclosure::exact(single ? BigInt(1) : content, prec);
    bool certified = true;
    for (auto& [refiner, mult] : parts) {
      refiner.refine(prec);
      auto radii = refiner.certify(prec);
      if (!radii) {
        certified = false;
        break;
      }
      const RealEnclosure m =
          detail::measure_from_boxes(refiner.polynomial().leading(), *radii, refiner.approximations(), prec);
      acc = acc * pow(m, mult);
    }
    if (certified && acc.width_at_most(tol)) return acc;
  }
  throw PrecisionError("Mahler measure enclosure did not reach the requested width for " + print_polynomial(f));
}

// H(alpha) = M(f)^(1/deg f) for the minimal polynomial f of alpha.
inline RealEnclosure weil_height(const IntPolynomial& f, const mpq_class& tol = default_tolerance()) {
  if (f.degree() == 0) throw DomainError("Weil height needs a polynomial of degree >= 1");
  // d/dx x^(1/n) <= 1/n on [1, inf), so a width-tol measure suffices.
  return nth_root(mahler_measure(f, tol), f.degree());
}

// True iff canonicalize(f) is monic and a product of cyclotomic polynomials.
// Trial division by Phi_n for every n with phi(n) <= deg f.
inline bool is_root_of_unity(const IntPolynomial& f) {
  if (f.degree() == 0) throw DomainError("is_root_of_unity needs a polynomial of degree >= 1");
  IntPolynomial g = canonicalize_poly(f);
  if (!g.is_monic() || abs(g.constant()) != 1) return false;
  // phi(n) >= sqrt(n/2), so n <= 2 deg^2 bounds the candidates.
  const unsigned long degree = g.degree();
  const unsigned long limit = 2 * degree * degree + 2;
  for (unsigned long n = 1; n <= limit && g.degree() > 0; ++n) {
    if (euler_phi(n) > g.degree()) continue;
    const IntPolynomial phi = cyclotomic(n);
    while (g.degree() >= phi.degree()) {
      auto q = exact_quotient(g, phi);
      if (!q) break;
      g = std::move(*q);
      if (g.degree() == 0) break;
    }
  }
  return g.degree() == 0 && abs(g.leading()) == 1;
}

// p divides neither the first nor the last coefficient of the minimal
// polynomial. `f` is canonicalized first.
inline bool is_p_adic_unit(const IntPolynomial& f, const BigInt& p) {
  if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
  const IntPolynomial g = canonicalize_poly(f);
  return !mpz_divisible_p(g.constant().get_mpz_t(), p.get_mpz_t()) &&
         !mpz_divisible_p(g.leading().get_mpz_t(), p.get_mpz_t());
}

// Largest prime at which the root fails to be a p-adic unit; nullopt when the
// product of the end coefficients is +-1. A zero constant term (alpha = 0) is
// outside every height domain and rejected.
inline std::optional<BigInt> largest_nonunit_prime(const IntPolynomial& f) {
  const IntPolynomial g = canonicalize_poly(f);
  if (g.constant() == 0) throw DomainError("zero is not in the multiplicative group");
  return largest_prime_factor(BigInt(g.constant() * g.leading()));
}

inline const mpq_class& default_dobrowolski_constant() {
  static const mpq_class c(1, 4);
  return c;
}

// exp(c * (log log d / log d)^3); exactly 1 for d < 3, where log log d <= 0.
inline RealEnclosure dobrowolski_lower_bound(unsigned long degree, const mpq_class& c = default_dobrowolski_constant(),
                                             Precision prec = kDefaultPrecision) {
  if (degree == 0) throw DomainError("degree must be >= 1");
  if (c <= 0) throw DomainError("Dobrowolski constant must be positive");
  if (degree < 3) return RealEnclosure::exact(1L, prec);
  const RealEnclosure log_d = log(RealEnclosure::exact(static_cast<long>(degree), prec));
  const RealEnclosure ratio = log(log_d) / log_d;
  return exp(RealEnclosure::exact(c, prec) * pow(ratio, 3));
}

// ---------------------------------------------------------------------------
// Best-effort irreducibility screen over Q.

enum class Irreducibility { irreducible, reducible, unknown };

struct IrreducibilityVerdict {
  Irreducibility verdict;
  std::string reason;
  std::optional<IntPolynomial> factor;  // exhibited proper factor when reducible
};

namespace detail {

inline std::vector<BigInt> positive_divisors(const BigInt& n) {
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : factorize(BigInt(abs(n)))) {
    const std::size_t base = divs.size();
    BigInt pk = 1;
    for (long k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// The unique integer inside [lo, hi], or nullopt if there is none; sets
// `ambiguous` when the interval is too wide to decide.
inline std::optional<BigInt> unique_integer(const RealEnclosure& e, bool& ambiguous) {
  mpz_class lo_int, hi_int;
  mpfr_get_z(lo_int.get_mpz_t(), e.lo().get(), MPFR_RNDU);
  mpfr_get_z(hi_int.get_mpz_t(), e.hi().get(), MPFR_RNDD);
  if (lo_int > hi_int) return std::nullopt;
  if (lo_int == hi_int) return lo_int;
  ambiguous = true;
  return std::nullopt;
}

}  // namespace detail

// Squarefree test, exact rational-root test, and for degree <= 12 an
// exhaustive search over root subsets of size <= deg/2 using certified root
// disks. "irreducible" and "reducible" are proofs; anything undecided is
// reported as unknown.
inline IrreducibilityVerdict check_irreducible(const IntPolynomial& f) {
  const IntPolynomial g = canonicalize_poly(f);
  const std::size_t n = g.degree();
  if (n == 0) return {Irreducibility::unknown, "constant polynomial", std::nullopt};
  if (n == 1) return {Irreducibility::irreducible, "linear", std::nullopt};
  if (g.constant() == 0) return {Irreducibility::reducible, "divisible by x", IntPolynomial{0, 1}};
  if (!is_squarefree(g)) {
    return {Irreducibility::reducible, "not squarefree", poly_gcd(g, *g.derivative())};
  }

  // Rational roots p/q with p | a_0, q | a_n.
  const auto ps = detail::positive_divisors(g.constant());
  const auto qs = detail::positive_divisors(g.leading());
  for (const auto& q : qs) {
    for (const auto& p : ps) {
      if (gcd(p, q) != 1) continue;
      for (int s : {1, -1}) {
        IntPolynomial candidate(std::vector<BigInt>{BigInt(-s * p), q});
        if (exact_quotient(g, candidate)) return {Irreducibility::reducible, "rational root", candidate};
      }
    }
  }
  if (n <= 3) return {Irreducibility::irreducible, "no rational root (degree <= 3)", std::nullopt};
  if (n > 12) return {Irreducibility::unknown, "degree above the exhaustive-search limit", std::nullopt};

  const std::vector<RootBox> roots = certified_roots(g, mpq_class(1, BigInt(1) << 80));
  const Precision prec = roots.front().center.precision();
  std::vector<ComplexBox> boxes;
  for (const auto& r : roots) {
    ComplexBox b = ComplexBox::point(r.center);
    const RealEnclosure spread(-r.radius, r.radius);
    boxes.push_back({b.re + spread, b.im + spread});
  }
  bool ambiguous = false;
  // Enumerate subsets by bitmask with popcount in [2, n/2].
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    const unsigned k = static_cast<unsigned>(__builtin_popcountl(mask));
    if (k < 2 || k > n / 2) continue;
    // Coefficients of prod (x - r) for r in the subset, lowest degree first.
    std::vector<ComplexBox> coef{ComplexBox{RealEnclosure::exact(1L, prec), RealEnclosure::exact(0L, prec)}};
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1UL)) continue;
      std::vector<ComplexBox> next(coef.size() + 1,
                                   ComplexBox{RealEnclosure::exact(0L, prec), RealEnclosure::exact(0L, prec)});
      const ComplexBox neg{-boxes[i].re, -boxes[i].im};
      for (std::size_t j = 0; j < coef.size(); ++j) {
        next[j + 1] = next[j + 1] + coef[j];
        next[j] = next[j] + coef[j] * neg;
      }
      coef = std::move(next);
    }
    for (const auto& b : qs) {
      const RealEnclosure scale = RealEnclosure::exact(b, prec);
      std::vector<BigInt> ints;
      bool feasible = true;
      bool local_ambiguous = false;
      for (const auto& c : coef) {
        const ComplexBox scaled{c.re * scale, c.im * scale};
        if (!scaled.im.contains(mpq_class(0))) {
          feasible = false;
          break;
        }
        auto v = detail::unique_integer(scaled.re, local_ambiguous);
        if (!v) {
          feasible = false;
          break;
        }
        ints.push_back(*v);
      }
      if (local_ambiguous) ambiguous = true;
      if (!feasible) continue;
      IntPolynomial candidate(std::move(ints));
      if (exact_quotient(g, candidate)) return {Irreducibility::reducible, "exhibited factor", candidate};
    }
  }
  if (ambiguous) return {Irreducibility::unknown, "factor search inconclusive", std::nullopt};
  return {Irreducibility::irreducible, "exhaustive factor search", std::nullopt};
}

}  // namespace heights
