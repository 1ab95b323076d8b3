#include <gtest/gtest.h>

#include "support.hpp"

using namespace heights;
using heights::testing::random_poly;
using heights::testing::uniform;

namespace {

const IntPolynomial kLehmer = parse_polynomial("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");

// Reference values from tests/oracles/frozen_values.py (mpmath, 50 digits).
const mpq_class kLehmerM("117628081825991750654/100000000000000000000");
const mpq_class kGoldenH("127201964951406896425/100000000000000000000");
const mpq_class kSqrt2("141421356237309504880/100000000000000000000");

bool near(const RealEnclosure& e, const mpq_class& v, const mpq_class& slack) {
  return compare(e.lo(), v + slack) <= 0 && compare(e.hi(), v - slack) >= 0;
}

const mpq_class kDigitSlack(1, BigInt("100000000000000000000"));  // oracle rounding, 1e-20

}  // namespace

TEST(CertifiedRoots, SquareRootOfTwo) {
  const auto boxes = certified_roots(IntPolynomial{-2, 0, 1});
  ASSERT_EQ(boxes.size(), 2u);
  const mpq_class tol = default_tolerance();
  for (const auto& b : boxes) {
    EXPECT_LE(compare(b.radius, tol), 0);
    EXPECT_TRUE(b.center.im().is_zero() || compare(abs(b.center.im()), tol) <= 0);
  }
  // Sorted by real part.
  EXPECT_LT(boxes[0].center.re().to_double(), 0);
  const RealEnclosure r(sub(boxes[1].center.re(), boxes[1].radius, MPFR_RNDD),
                        add(boxes[1].center.re(), boxes[1].radius, MPFR_RNDU));
  EXPECT_TRUE(near(r, kSqrt2, kDigitSlack));
}

TEST(CertifiedRoots, ImaginaryPair) {
  const auto boxes = certified_roots(IntPolynomial{1, 0, 1});
  ASSERT_EQ(boxes.size(), 2u);
  EXPECT_NEAR(boxes[0].center.im().to_double(), -1.0, 1e-15);
  EXPECT_NEAR(boxes[1].center.im().to_double(), 1.0, 1e-15);
  EXPECT_NEAR(boxes[0].center.re().to_double(), 0.0, 1e-15);
}

TEST(CertifiedRoots, LehmerHasOneRootOutside) {
  const auto boxes = certified_roots(kLehmer);
  ASSERT_EQ(boxes.size(), 10u);
  int outside = 0, inside_or_on = 0;
  for (const auto& b : boxes) {
    if (compare(b.modulus_lower(), mpq_class(1)) > 0) ++outside;
    if (compare(b.modulus_upper(), mpq_class(1)) <= 0 || compare(b.modulus_lower(), mpq_class(1)) <= 0) {
      ++inside_or_on;
    }
  }
  EXPECT_EQ(outside, 1);
  EXPECT_EQ(inside_or_on, 9);
  // Disjoint disks.
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const BigFloat d = hypot(sub(boxes[i].center.re(), boxes[j].center.re(), MPFR_RNDN),
                               sub(boxes[i].center.im(), boxes[j].center.im(), MPFR_RNDN), MPFR_RNDD);
      EXPECT_GT(d, add(boxes[i].radius, boxes[j].radius, MPFR_RNDU));
    }
  }
}

TEST(CertifiedRoots, Errors) {
  EXPECT_THROW(certified_roots(IntPolynomial{5}), DomainError);
  EXPECT_THROW(certified_roots(IntPolynomial{1, 2, 1}), DomainError);
  EXPECT_THROW(certified_roots(IntPolynomial{-2, 0, 1}, mpq_class(0)), DomainError);
}

TEST(MahlerMeasure, Examples) {
  const RealEnclosure m = mahler_measure(kLehmer);
  EXPECT_TRUE(m.width_at_most(default_tolerance()));
  EXPECT_TRUE(near(m, kLehmerM, kDigitSlack));
  EXPECT_TRUE(mahler_measure(IntPolynomial{-2, 1}).contains(mpq_class(2)));
  EXPECT_TRUE(mahler_measure(IntPolynomial{-4, -2, 1}).contains(mpq_class(4)));
  EXPECT_TRUE(mahler_measure(IntPolynomial{1, 1, 1}).contains(mpq_class(1)));
}

TEST(MahlerMeasure, ZeroRootsAndRepeatedFactors) {
  // x^3 (x - 3)^2: M = 9.
  const IntPolynomial f = IntPolynomial{0, 0, 0, 1} * IntPolynomial{-3, 1} * IntPolynomial{-3, 1};
  EXPECT_TRUE(mahler_measure(f).contains(mpq_class(9)));
}

TEST(MahlerMeasure, TighterTolerance) {
  const mpq_class tol(1, BigInt("1000000000000000000000000000000"));
  const RealEnclosure m = mahler_measure(kLehmer, tol);
  EXPECT_TRUE(m.width_at_most(tol));
  EXPECT_TRUE(near(m, kLehmerM, kDigitSlack));
}

TEST(WeilHeight, Examples) {
  EXPECT_TRUE(weil_height(IntPolynomial{-4, 1}).contains(mpq_class(4)));
  EXPECT_TRUE(weil_height(IntPolynomial{-4, -2, 1}).contains(mpq_class(2)));
  EXPECT_TRUE(near(weil_height(IntPolynomial{-1, -1, 1}), kGoldenH, kDigitSlack));
}

TEST(MahlerMeasure, ReversalInvariance) {
  int tested = 0;
  while (tested < 500) {
    const IntPolynomial f = random_poly(3, 20);
    if (f.degree() < 2 || f.constant() == 0) continue;
    if (check_irreducible(f).verdict != Irreducibility::irreducible) continue;
    ++tested;
    const RealEnclosure a = mahler_measure(f), b = mahler_measure(f.reversed());
    ASSERT_TRUE(a.overlaps(b)) << print_polynomial(f);
  }
}

TEST(MahlerMeasure, ProductOverBoxesLiesInEnclosure) {
  for (int i = 0; i < 100; ++i) {
    const IntPolynomial f = random_poly(8, 10);
    if (f.degree() < 1 || !is_squarefree(f)) continue;
    const RealEnclosure m = mahler_measure(f);
    RealEnclosure prod = RealEnclosure::exact(BigInt(abs(f.leading())), 256);
    for (const auto& b : certified_roots(f)) {
      prod = prod * max_with(RealEnclosure(b.modulus_lower(), b.modulus_upper()), 1);
    }
    ASSERT_TRUE(prod.overlaps(m)) << print_polynomial(f);
  }
}

TEST(RootOfUnity, Examples) {
  EXPECT_TRUE(is_root_of_unity(IntPolynomial{1, 1, 1}));
  EXPECT_FALSE(is_root_of_unity(IntPolynomial{-1, -1, 1}));
  EXPECT_TRUE(is_root_of_unity(IntPolynomial{-1, 1}));
  EXPECT_TRUE(is_root_of_unity(cyclotomic(30) * cyclotomic(7)));
  EXPECT_FALSE(is_root_of_unity(kLehmer));
  EXPECT_FALSE(is_root_of_unity(IntPolynomial{1, 0, 2}));
  EXPECT_THROW(is_root_of_unity(IntPolynomial{3}), DomainError);
}

TEST(RootOfUnity, AgreesWithMeasureOnCorpus) {
  std::vector<IntPolynomial> corpus;
  for (unsigned long n = 1; n <= 30; ++n) {
    if (euler_phi(n) <= 10) corpus.push_back(cyclotomic(n));
  }
  for (int i = 0; i < 300; ++i) corpus.push_back(canonicalize_poly(random_poly(10, 2)));
  for (const auto& f : corpus) {
    if (f.degree() < 1 || f.constant() == 0) continue;
    if (check_irreducible(f).verdict != Irreducibility::irreducible) continue;
    const RealEnclosure m = mahler_measure(f);
    if (is_root_of_unity(f)) {
      ASSERT_TRUE(m.contains(mpq_class(1))) << print_polynomial(f);
    } else {
      ASSERT_FALSE(m.contains(mpq_class(1))) << print_polynomial(f);
    }
  }
}

TEST(PAdic, Examples) {
  const IntPolynomial g{-4, -2, 1};
  EXPECT_FALSE(is_p_adic_unit(g, 2));
  EXPECT_TRUE(is_p_adic_unit(g, 3));
  EXPECT_TRUE(is_p_adic_unit(IntPolynomial{-1, 1}, 5));
  EXPECT_THROW(is_p_adic_unit(g, 4), DomainError);
  EXPECT_EQ(largest_nonunit_prime(g), BigInt(2));
  EXPECT_EQ(largest_nonunit_prime(IntPolynomial{-15, 7}), BigInt(7));
  EXPECT_FALSE(largest_nonunit_prime(IntPolynomial{-1, -1, 1}).has_value());
}

TEST(PAdic, MeasureAtLeastNonunitPrime) {
  const mpq_class tol = default_tolerance();
  for (int i = 0; i < 300; ++i) {
    const IntPolynomial f = random_poly(6, 30);
    if (f.degree() < 1 || f.constant() == 0) continue;
    if (check_irreducible(f).verdict != Irreducibility::irreducible) continue;
    const auto p = largest_nonunit_prime(f);
    if (!p) continue;
    ASSERT_GE(compare(mahler_measure(f).lo(), mpq_class(*p) - tol), 0) << print_polynomial(f);
  }
}

TEST(Dobrowolski, FrozenValues) {
  const mpq_class c(1, 4), slack(1, BigInt("100000000000000"));
  EXPECT_TRUE(dobrowolski_lower_bound(1, c).contains(mpq_class(1)));
  EXPECT_TRUE(dobrowolski_lower_bound(2, mpq_class(7)).contains(mpq_class(1)));
  EXPECT_TRUE(near(dobrowolski_lower_bound(3, c), mpq_class("1000156850899483/1000000000000000"), slack));
  EXPECT_TRUE(near(dobrowolski_lower_bound(10, c), mpq_class("1011951548927778/1000000000000000"), slack));
  EXPECT_TRUE(near(dobrowolski_lower_bound(1000, c), mpq_class("1005490029628178/1000000000000000"), slack));
  EXPECT_THROW(dobrowolski_lower_bound(0, c), DomainError);
  EXPECT_THROW(dobrowolski_lower_bound(5, mpq_class(0)), DomainError);
}

TEST(Dobrowolski, BelowMeasureOfNonCyclotomic) {
  for (int i = 0; i < 200; ++i) {
    const IntPolynomial f = random_poly(10, 1);
    if (f.degree() < 1 || f.constant() == 0) continue;
    if (check_irreducible(f).verdict != Irreducibility::irreducible || is_root_of_unity(f)) continue;
    const RealEnclosure m = mahler_measure(f);
    ASSERT_LE(compare(dobrowolski_lower_bound(f.degree()).lo(), m.hi().to_rational()), 0) << print_polynomial(f);
  }
}

TEST(Irreducibility, Screen) {
  EXPECT_EQ(check_irreducible(kLehmer).verdict, Irreducibility::irreducible);
  const auto v = check_irreducible(IntPolynomial{4, 0, 0, 0, 1});
  EXPECT_EQ(v.verdict, Irreducibility::reducible);
  ASSERT_TRUE(v.factor.has_value());
  EXPECT_TRUE(exact_quotient(IntPolynomial{4, 0, 0, 0, 1}, *v.factor).has_value());
  EXPECT_EQ(check_irreducible(IntPolynomial{-2, 0, 1}).verdict, Irreducibility::irreducible);
  EXPECT_EQ(check_irreducible(IntPolynomial{-1, 0, 1}).verdict, Irreducibility::reducible);
  EXPECT_EQ(check_irreducible(cyclotomic(3) * cyclotomic(5)).verdict, Irreducibility::reducible);
  EXPECT_EQ(check_irreducible(IntPolynomial{1, 0, 2, 0, 1}).verdict, Irreducibility::reducible);  // (x^2+1)^2
  for (unsigned long n = 1; n <= 40; ++n) {
    if (euler_phi(n) <= 12) EXPECT_EQ(check_irreducible(cyclotomic(n)).verdict, Irreducibility::irreducible) << n;
  }
}

TEST(Irreducibility, ProductsOfRandomFactorsAreReducible) {
  for (int i = 0; i < 60; ++i) {
    IntPolynomial a = random_poly(4, 5), b = random_poly(4, 5);
    if (a.degree() < 1 || b.degree() < 1) continue;
    const auto v = check_irreducible(a * b);
    ASSERT_NE(v.verdict, Irreducibility::irreducible) << print_polynomial(a * b);
  }
}
