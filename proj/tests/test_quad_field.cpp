#include <gtest/gtest.h>

#include "support.hpp"

using namespace heights;
using heights::testing::uniform;

namespace {

QuadElement q(long a_num, long a_den, long b_num, long b_den, long d) {
  return QuadElement(make_rational(a_num, a_den), make_rational(b_num, b_den), d);
}

QuadElement random_element(long d) {
  QuadElement x = q(uniform(-30, 30), uniform(1, 9), uniform(-30, 30), uniform(1, 9), d);
  while (x.is_zero()) x = q(uniform(-30, 30), uniform(1, 9), uniform(-30, 30), uniform(1, 9), d);
  return x;
}

const long kDiscs[] = {2, 3, 5, 6, 7, 10, 13, 30};

}  // namespace

TEST(QuadElement, Validation) {
  EXPECT_THROW(q(1, 1, 1, 1, 4), DomainError);
  EXPECT_THROW(q(1, 1, 1, 1, 1), DomainError);
  EXPECT_THROW(q(1, 1, 1, 1, -5), DomainError);
  EXPECT_THROW(q(1, 1, 1, 1, 5) * q(1, 1, 1, 1, 2), DomainError);
  EXPECT_THROW(q(1, 1, 0, 1, 5) / q(0, 1, 0, 1, 5), DomainError);
}

TEST(QuadElement, Arithmetic) {
  const QuadElement g = q(1, 1, 1, 1, 5);
  EXPECT_EQ(g * g, q(6, 1, 2, 1, 5));
  EXPECT_EQ(g / g, QuadElement::rational(1, 5));
  EXPECT_EQ(g * g.conjugate(), QuadElement::rational(-4, 5));
  EXPECT_EQ(to_string(g), "1+√5");
  EXPECT_EQ(to_string(q(1, 2, 1, 2, 5)), "1/2+1/2√5");
  EXPECT_EQ(to_string(q(0, 1, -1, 1, 2)), "-√2");
}

TEST(QuadElement, FieldAxiomsOnRandomTriples) {
  for (int i = 0; i < 300; ++i) {
    const long d = kDiscs[i % 8];
    const QuadElement x = random_element(d), y = random_element(d), z = random_element(d);
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    ASSERT_EQ((x / y) * y, x);
  }
}

TEST(MinimalPolynomial, Examples) {
  EXPECT_EQ(print_polynomial(qf_minimal_polynomial(q(1, 1, 1, 1, 5))), "x^2-2x-4");
  EXPECT_EQ(print_polynomial(qf_minimal_polynomial(q(1, 2, 1, 2, 5))), "x^2-x-1");
  EXPECT_EQ(print_polynomial(qf_minimal_polynomial(QuadElement::rational(3, 5))), "x-3");
  EXPECT_EQ(print_polynomial(qf_minimal_polynomial(QuadElement::rational(Rational(-2, 3), 5))), "3x+2");
  EXPECT_THROW(qf_minimal_polynomial(QuadElement::rational(0, 5)), DomainError);
}

TEST(MinimalPolynomial, VanishesExactly) {
  for (int i = 0; i < 500; ++i) {
    const QuadElement x = random_element(kDiscs[i % 8]);
    const IntPolynomial f = qf_minimal_polynomial(x);
    ASSERT_TRUE(is_canonical(f));
    ASSERT_TRUE(evaluate_at(f, x).is_zero());
    ASSERT_EQ(f.degree(), x.is_rational() ? 1u : 2u);
  }
}

TEST(Norm, ExamplesAndMultiplicativity) {
  EXPECT_EQ(qf_norm(q(1, 1, 1, 1, 5)), -4);
  EXPECT_EQ(qf_norm(q(1, 2, 1, 2, 5)), -1);
  EXPECT_EQ(qf_norm(QuadElement::rational(3, 5)), 9);
  for (int i = 0; i < 1000; ++i) {
    const long d = kDiscs[i % 8];
    const QuadElement x = random_element(d), y = random_element(d);
    ASSERT_EQ(qf_norm(x * y), qf_norm(x) * qf_norm(y));
  }
}

TEST(QuadMeasure, Examples) {
  EXPECT_TRUE(qf_mahler_measure(q(1, 1, 1, 1, 5)).contains(mpq_class(4)));
  const RealEnclosure phi = qf_mahler_measure(q(1, 2, 1, 2, 5));
  EXPECT_NEAR(phi.midpoint().to_double(), 1.6180339887498949, 1e-15);
  const RealEnclosure three = qf_mahler_measure(QuadElement::rational(3, 5));
  EXPECT_TRUE(three.contains(mpq_class(3)));
  EXPECT_EQ(compare(three.lo(), three.hi()), 0);
  EXPECT_EQ(rational_mahler_measure(Rational(-7, 3)), 7);
}

TEST(QuadMeasure, ConjugateAndPowerRule) {
  const mpq_class tol = default_tolerance();
  for (int i = 0; i < 100; ++i) {
    const QuadElement x = random_element(kDiscs[i % 8]);
    const RealEnclosure h = qf_weil_height(x);
    ASSERT_TRUE(h.overlaps(qf_weil_height(x.conjugate())));
    const RealEnclosure h2 = qf_weil_height(x * x), sq = square(h);
    // Within tolerance: widen by tol on each side.
    ASSERT_LE(compare(h2.lo(), sq.hi().to_rational() + 4 * tol), 0);
    ASSERT_GE(compare(h2.hi(), sq.lo().to_rational() - 4 * tol), 0);
  }
}

TEST(Enumerate, MinHeightExamples) {
  const QuadCandidate a = qf_enumerate_min_height(5, 8);
  EXPECT_EQ(a.element, q(1, 2, 1, 2, 5));
  EXPECT_EQ(std::tie(a.u, a.v, a.w), std::make_tuple(1L, 1L, 2L));
  const mpq_class oracle("127201964951406896425/100000000000000000000"), slack(1, BigInt("100000000000000000000"));
  EXPECT_LE(compare(a.height.lo(), oracle + slack), 0);
  EXPECT_GE(compare(a.height.hi(), oracle - slack), 0);
  EXPECT_NEAR(a.height.midpoint().to_double(), 1.2720196495140690, 1e-15);

  // Oracle: sqrt 2 (H = 2^(1/2)) beats 1 + sqrt 2 (H ~ 1.55377) in the box.
  const QuadCandidate b = qf_enumerate_min_height(2, 8);
  EXPECT_EQ(b.element, q(0, 1, 1, 1, 2));
  EXPECT_NEAR(b.height.midpoint().to_double(), 1.4142135623730951, 1e-15);

  const QuadCandidate c = qf_enumerate_min_height(5, 1);
  EXPECT_EQ(c.element, q(1, 1, 1, 1, 5));
  EXPECT_TRUE(c.height.contains(mpq_class(2)));
  EXPECT_THROW(qf_enumerate_min_height(5, 0), DomainError);
}

TEST(Enumerate, Pool) {
  const auto pool = qf_enumerate_pool(5, 8, 2);
  bool has_two = false, has_golden = false;
  for (const auto& c : pool) {
    EXPECT_FALSE(c.element.is_one());
    EXPECT_LE(compare(c.height.lo(), mpq_class(2)), 0);
    has_two = has_two || c.element == QuadElement::rational(2, 5);
    has_golden = has_golden || c.element == q(1, 2, 1, 2, 5);
  }
  EXPECT_TRUE(has_two);
  EXPECT_TRUE(has_golden);
}

TEST(ParseQuad, Forms) {
  EXPECT_EQ(parse_quad("1+√5", 5), q(1, 1, 1, 1, 5));
  EXPECT_EQ(parse_quad("(1+sqrt(5))/2", 5), q(1, 2, 1, 2, 5));
  EXPECT_EQ(parse_quad("-3/4 - 2 sqrt5", 5), q(-3, 4, -2, 1, 5));
  EXPECT_EQ(parse_quad("2", 5), QuadElement::rational(2, 5));
  EXPECT_EQ(parse_quad("√2", 2), q(0, 1, 1, 1, 2));
  for (int i = 0; i < 200; ++i) {
    const QuadElement x = random_element(kDiscs[i % 8]);
    ASSERT_EQ(parse_quad(to_string(x), x.disc()), x) << to_string(x);
  }
  EXPECT_THROW(parse_quad("1+√3", 5), ParseError);
  EXPECT_THROW(parse_quad("1+", 5), ParseError);
  EXPECT_THROW(parse_quad("", 5), ParseError);
}
