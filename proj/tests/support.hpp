#pragma once

#include <random>
#include <string>
#include <vector>

#include "heights/heights.hpp"

namespace heights::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntPolynomial random_poly(std::size_t max_degree, long coef) {
  const auto deg = static_cast<std::size_t>(uniform(0, static_cast<long>(max_degree)));
  std::vector<BigInt> c(deg + 1);
  for (auto& v : c) v = uniform(-coef, coef);
  while (c.back() == 0) c.back() = uniform(-coef, coef);
  return IntPolynomial(std::move(c));
}

// Every two-argument Rational in the tests goes through make_rational:
// mpq_class(a, b) does not reduce.
inline bool contains(const RealEnclosure& e, const mpq_class& q) { return e.contains(q); }

// Exhaustive oracle: best value over factorisations of length <= max_len,
// by dynamic programming over partial products (product or max).
inline HeightTable brute_force(const HeightedGroup& G, bool use_max, std::size_t max_len) {
  const auto& g = G.group;
  const std::size_t n = g.order();
  std::vector<std::optional<Rational>> best(n);
  best[0] = Rational(1);
  std::vector<std::optional<Rational>> layer = best;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::optional<Rational>> next(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (!layer[a]) continue;
      for (std::size_t h = 0; h < n; ++h) {
        const std::size_t b = g.op(a, h);
        const Rational v = use_max ? std::max(*layer[a], G.height[h]) : *layer[a] * G.height[h];
        if (!next[b] || v < *next[b]) next[b] = v;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (next[a] && (!best[a] || *next[a] < *best[a])) best[a] = next[a];
    }
    layer = std::move(next);
  }
  HeightTable out(n);
  for (std::size_t a = 0; a < n; ++a) out[a] = *best[a];
  return out;
}

// Symmetric random height table with values in {1, 1 + k/den}.
inline HeightTable random_height(const FiniteAbelianGroup& g, long max_num = 12, long den = 4,
                                 double one_prob = 0.1) {
  HeightTable h(g.order());
  h[0] = 1;
  std::bernoulli_distribution is_one(one_prob);
  for (std::size_t a = 1; a < g.order(); ++a) {
    const std::size_t b = g.inverse(a);
    if (b < a) {
      h[a] = h[b];
      continue;
    }
    h[a] = is_one(rng()) ? Rational(1) : Rational(1) + make_rational(uniform(1, max_num), den);
  }
  return h;
}

inline std::vector<std::vector<long>> fixture_shapes() {
  return {{2},       {3},       {4},          {5},       {6},       {7},       {8},      {9},
          {12},      {16},      {2, 2},       {2, 3},    {2, 4},    {3, 3},    {2, 2, 2}, {4, 4},
          {2, 2, 3}, {3, 5},    {2, 2, 2, 2}, {6, 4},    {5, 5},    {8, 8},    {2, 3, 5}, {16, 16},
          {2, 4, 8, 8}, {512}};
}

}  // namespace heights::testing
