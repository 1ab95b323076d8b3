#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace heights;

namespace {

std::vector<QuadElement> golden_pool_members() {
  std::vector<QuadElement> m;
  for (const auto& c : qf_enumerate_pool(5, 8, 2)) m.push_back(c.element);
  return m;
}

template <typename T>
T product(const std::vector<T>& xs, const T& one) {
  T p = one;
  for (const auto& x : xs) p = Ambient<T>::mul(p, x);
  return p;
}

}  // namespace

TEST(FactorPool, DedupAndOrder) {
  const FactorPool<Rational> pool({4, 2, 2, 1, Rational(1, 3)});
  ASSERT_EQ(pool.size(), 3u);
  EXPECT_EQ(pool[0].element, 2);
  EXPECT_EQ(pool[1].element, Rational(1, 3));
  EXPECT_EQ(pool[2].element, 4);
  EXPECT_THROW(FactorPool<Rational>({0}), DomainError);
  EXPECT_THROW(FactorPool<Rational>({2}, 0), DomainError);
}

TEST(SearchMinf, RationalFour) {
  const auto r = search_minf_upper(Rational(4), FactorPool<Rational>({2, 4}));
  EXPECT_TRUE(r.upper.contains(mpq_class(2)));
  EXPECT_EQ(r.witness, (std::vector<Rational>{2, 2}));
  EXPECT_EQ(r.lower, 2);
  EXPECT_TRUE(r.pinned());
  EXPECT_EQ(r.mode, BoundMode::max);
}

TEST(SearchMinf, GoldenPinch) {
  const QuadElement target = parse_quad("1+√5", 5);
  const FactorPool<QuadElement> pool(golden_pool_members());
  const auto r = search_minf_upper(target, pool);
  EXPECT_TRUE(r.pinned());
  EXPECT_EQ(r.lower, 2);
  auto w = r.witness;
  std::sort(w.begin(), w.end());
  std::vector<QuadElement> expected{QuadElement::rational(2, 5), parse_quad("(1+√5)/2", 5)};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(w, expected);
}

TEST(SearchMinf, Identity) {
  const auto r = search_minf_upper(Rational(1), FactorPool<Rational>({2}));
  EXPECT_TRUE(r.witness.empty());
  EXPECT_TRUE(r.upper.contains(mpq_class(1)));
  EXPECT_THROW(search_minf_upper(Rational(0), FactorPool<Rational>({2})), DomainError);
}

TEST(SearchM1, Examples) {
  // Rationals: M_1 = M, so no witness beats M(6) = 6.
  auto pw = [](long p, long e) {
    return e >= 0 ? Rational(pow(BigInt(p), e)) : Rational(1) / Rational(pow(BigInt(p), -e));
  };
  std::vector<Rational> members;
  for (long a = -3; a <= 3; ++a) {
    for (long b = -3; b <= 3; ++b) members.push_back(pw(2, a) * pw(3, b));
  }
  const auto six = search_m1_upper(Rational(6), FactorPool<Rational>(members, 3));
  EXPECT_TRUE(six.upper.contains(mpq_class(6)));
  EXPECT_EQ(six.witness.size(), 1u);  // shortest among ties

  const auto four = search_m1_upper(Rational(4), FactorPool<Rational>({2, 4}));
  EXPECT_TRUE(four.upper.contains(mpq_class(4)));
  EXPECT_EQ(four.witness, (std::vector<Rational>{4}));
  EXPECT_TRUE(search_m1_upper(Rational(1), FactorPool<Rational>({2})).upper.contains(mpq_class(1)));
}

TEST(SearchMinf, WitnessesAndBoundConsistency) {
  const QuadElement target = parse_quad("1+√5", 5);
  const FactorPool<QuadElement> pool(golden_pool_members());
  const mpq_class tol = default_tolerance();
  std::size_t seen = 0;
  const auto r = search_minf_upper(target, pool, tol, [&](const std::vector<QuadElement>& w) {
    ++seen;
    EXPECT_EQ(product(w, QuadElement::rational(1, 5)), target);
    bool big = false;
    for (const auto& x : w) big = big || compare(qf_mahler_measure(x).hi(), mpq_class(2) - tol) >= 0;
    EXPECT_TRUE(big);
  });
  EXPECT_GT(seen, 0u);
  EXPECT_EQ(r.explored, seen);
}

TEST(SearchM1, Sandwich) {
  const QuadElement target = parse_quad("1+√5", 5);
  const FactorPool<QuadElement> pool(golden_pool_members(), 3);
  const mpq_class tol = default_tolerance();
  const RealEnclosure h_target = qf_weil_height(target);
  search_m1_upper(target, pool, tol, [&](const std::vector<QuadElement>& w) {
    RealEnclosure pm = RealEnclosure::exact(1L, 128), ph = RealEnclosure::exact(1L, 128);
    for (const auto& x : w) {
      pm = pm * qf_mahler_measure(x);
      ph = ph * qf_weil_height(x);
    }
    EXPECT_GE(compare(pm.hi(), ph.lo().to_rational() - 2 * tol), 0);
    EXPECT_GE(compare(ph.hi(), h_target.lo().to_rational() - 2 * tol), 0);
  });
}

TEST(Search, MonotoneInPoolAndLength) {
  const QuadElement target = parse_quad("3+√5", 5);
  auto members = golden_pool_members();
  std::optional<RealEnclosure> prev;
  for (std::size_t len = 1; len <= 4; ++len) {
    const auto r = search_minf_upper(target, FactorPool<QuadElement>(members, len));
    if (prev) EXPECT_LE(compare(r.upper.hi(), prev->hi()), 0);
    prev = r.upper;
  }
  const auto small = search_minf_upper(target, FactorPool<QuadElement>({members.begin(), members.begin() + 5}));
  const auto large = search_minf_upper(target, FactorPool<QuadElement>(members));
  EXPECT_LE(compare(large.upper.hi(), small.upper.hi()), 0);
}

TEST(Search, SurdPool) {
  std::vector<SurdCoset> members;
  for (const char* s : {"2^1/2", "2^1/3", "3^1/2", "3^1/3", "2", "3", "6"}) members.push_back(parse_surd(s));
  const SurdCoset target = parse_surd("2^5/6 * 3^1/2");
  const auto r = search_minf_upper(target, FactorPool<SurdCoset>(members, 3));
  EXPECT_TRUE(r.pinned());
  EXPECT_EQ(r.lower, 3);
  EXPECT_EQ(product(r.witness, SurdCoset{}), target);
}

TEST(HinfRootSplit, DecreasesToOne) {
  const SurdCoset two = surd_from_rational(2, 1);
  EXPECT_TRUE(hinf_root_split(two, 1).contains(mpq_class(2)));
  const RealEnclosure v16 = hinf_root_split(two, 16);
  EXPECT_NEAR(v16.midpoint().to_double(), 1.0442737824274138, 1e-15);
  EXPECT_TRUE(hinf_root_split(SurdCoset{}, 7).contains(mpq_class(1)));
  std::optional<RealEnclosure> prev;
  for (unsigned k = 0; k <= 10; ++k) {
    const RootSplit s = hinf_root_split_exact(two, 1UL << k);
    EXPECT_EQ(compare(s.height, pow(surd_weil_height(two), Rational(1, 1L << k))), 0);
    EXPECT_EQ(product(std::vector<SurdCoset>(s.copies, s.factor), SurdCoset{}), two);
    if (prev) EXPECT_TRUE(s.value.strictly_below(*prev));
    prev = s.value;
  }
  EXPECT_LT(compare(prev->hi(), mpq_class(1001, 1000)), 0);
  EXPECT_THROW(hinf_root_split(two, 0), DomainError);
}
