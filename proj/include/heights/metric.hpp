#pragma once

// Heights on finite abelian groups and the two constructions built from a
// height rho by optimising over factorisations alpha = alpha_1 alpha_2 ...:
//
//   rho_1(alpha)   = inf prod rho(alpha_n)    (metric height)
//   rho_inf(alpha) = inf max  rho(alpha_n)    (strong metric height)
//
// On a finite group both infima are attained and computed exactly: rho_1 is
// a shortest path in the complete Cayley graph with multiplicative weights,
// rho_inf is a threshold sweep over subgroups generated by sublevel sets.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "heights/error.hpp"
#include "heights/exact.hpp"

namespace heights {

inline constexpr std::size_t kDefaultGroupOrderCap = 512;

// Z/n_1 x ... x Z/n_k, elements indexed in mixed radix (first factor fastest).
class FiniteAbelianGroup {
 public:
  using Element = std::size_t;

  explicit FiniteAbelianGroup(std::vector<long> cyclic_orders, std::size_t order_cap = kDefaultGroupOrderCap)
      : orders_(std::move(cyclic_orders)) {
    if (orders_.empty()) throw DomainError("group needs at least one cyclic factor");
    order_ = 1;
    for (long n : orders_) {
      if (n < 2) throw DomainError("cyclic factor orders must be >= 2");
      order_ *= static_cast<std::size_t>(n);
      if (order_ > order_cap) throw DomainError("group order exceeds the cap of " + std::to_string(order_cap));
    }
  }

  std::size_t order() const { return order_; }
  const std::vector<long>& cyclic_orders() const { return orders_; }
  static constexpr Element identity() { return 0; }

  std::vector<long> digits(Element g) const {
    std::vector<long> d(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      d[i] = static_cast<long>(g % static_cast<std::size_t>(orders_[i]));
      g /= static_cast<std::size_t>(orders_[i]);
    }
    return d;
  }

  Element from_digits(const std::vector<long>& d) const {
    if (d.size() != orders_.size()) throw DomainError("element has the wrong number of coordinates");
    Element g = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) {
      const long n = orders_[i];
      const long v = ((d[i] % n) + n) % n;
      g = g * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    }
    return g;
  }

  Element op(Element a, Element b) const {
    Element out = 0, stride = 1;
    for (long n : orders_) {
      const auto un = static_cast<std::size_t>(n);
      out += ((a % un + b % un) % un) * stride;
      a /= un;
      b /= un;
      stride *= un;
    }
    return out;
  }

  Element inverse(Element a) const {
    Element out = 0, stride = 1;
    for (long n : orders_) {
      const auto un = static_cast<std::size_t>(n);
      out += ((un - a % un) % un) * stride;
      a /= un;
      stride *= un;
    }
    return out;
  }

  std::string label(Element g) const {
    std::string s = "(";
    const auto d = digits(g);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(d[i]);
    }
    return s + ")";
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.orders_ == b.orders_; }

 private:
  std::vector<long> orders_;
  std::size_t order_ = 1;
};

// Values indexed by group element.
using HeightTable = std::vector<Rational>;
using ElementSet = std::vector<FiniteAbelianGroup::Element>;  // ascending

enum class HeightClass { plain, metric, strong };

inline const char* to_string(HeightClass c) {
  switch (c) {
    case HeightClass::plain: return "plain";
    case HeightClass::metric: return "metric";
    case HeightClass::strong: return "strong";
  }
  return "?";
}

// Throws DomainError naming the first violated height axiom.
inline void validate_height(const FiniteAbelianGroup& g, const HeightTable& h) {
  if (h.size() != g.order()) {
    throw DomainError("height table has " + std::to_string(h.size()) + " entries, group order is " +
                      std::to_string(g.order()));
  }
  if (h[FiniteAbelianGroup::identity()] != 1) throw DomainError("height axiom (i) rho(1) = 1 fails");
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (h[a] < 1) throw DomainError("height values must be >= 1; fails at " + g.label(a));
    if (h[a] != h[g.inverse(a)]) {
      throw DomainError("height axiom (ii) rho(a) = rho(a^-1) fails at " + g.label(a));
    }
  }
}

struct HeightedGroup {
  FiniteAbelianGroup group;
  HeightTable height;

  HeightedGroup(FiniteAbelianGroup g, HeightTable h) : group(std::move(g)), height(std::move(h)) {
    validate_height(group, height);
  }

  HeightedGroup with_height(HeightTable h) const { return {group, std::move(h)}; }
};

// ---------------------------------------------------------------------------

// Exhaustive pair scan for the strongest inequality satisfied.
inline HeightClass classify_height(const FiniteAbelianGroup& g, const HeightTable& h) {
  validate_height(g, h);
  bool strong = true;
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = a; b < g.order(); ++b) {
      const Rational& ab = h[g.op(a, b)];
      if (ab > h[a] * h[b]) return HeightClass::plain;
      if (strong && ab > std::max(h[a], h[b])) strong = false;
    }
  }
  return strong ? HeightClass::strong : HeightClass::metric;
}

inline HeightClass classify_height(const HeightedGroup& G) { return classify_height(G.group, G.height); }

// Minimum of prod rho(h_i) over walks identity -> alpha (dense Dijkstra with
// multiplicative weights >= 1).
inline HeightTable rho1_exact(const HeightedGroup& G) {
  const auto& g = G.group;
  const auto& rho = G.height;
  const std::size_t n = g.order();
  std::vector<std::optional<Rational>> dist(n);
  std::vector<bool> done(n, false);
  dist[FiniteAbelianGroup::identity()] = Rational(1);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] && (u == n || *dist[v] < *dist[u])) u = v;
    }
    if (u == n) break;
    done[u] = true;
    for (std::size_t h = 1; h < n; ++h) {
      const std::size_t v = g.op(u, h);
      if (done[v]) continue;
      Rational cand = *dist[u] * rho[h];
      if (!dist[v] || cand < *dist[v]) dist[v] = std::move(cand);
    }
  }
  HeightTable out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = *dist[v];
  return out;
}

namespace detail {

// Grows `member` (a subgroup indicator) to the subgroup generated by it and g.
inline void adjoin(const FiniteAbelianGroup& grp, std::vector<bool>& member, std::size_t g) {
  if (member[g]) return;
  std::vector<std::size_t> base;
  for (std::size_t s = 0; s < member.size(); ++s) {
    if (member[s]) base.push_back(s);
  }
  // <S, g> is the union of the cosets S g^j.
  for (std::size_t cur = g; !member[cur]; cur = grp.op(cur, g)) {
    for (std::size_t s : base) member[grp.op(s, cur)] = true;
  }
}

}  // namespace detail

// Subgroup generated by the given elements.
inline ElementSet generated_subgroup(const FiniteAbelianGroup& g, const ElementSet& generators) {
  std::vector<bool> member(g.order(), false);
  member[FiniteAbelianGroup::identity()] = true;
  for (std::size_t x : generators) detail::adjoin(g, member, x);
  ElementSet out;
  for (std::size_t s = 0; s < g.order(); ++s) {
    if (member[s]) out.push_back(s);
  }
  return out;
}

// Minimum over factorisations of max rho(h_i): the smallest r in the image of
// rho such that alpha lies in the subgroup generated by {rho <= r}.
inline HeightTable rho_inf_exact(const HeightedGroup& G) {
  const auto& g = G.group;
  const auto& rho = G.height;
  const std::size_t n = g.order();
  std::vector<std::size_t> by_height(n);
  std::iota(by_height.begin(), by_height.end(), std::size_t{0});
  std::stable_sort(by_height.begin(), by_height.end(), [&](std::size_t a, std::size_t b) { return rho[a] < rho[b]; });

  std::vector<bool> member(n, false);
  member[FiniteAbelianGroup::identity()] = true;
  std::vector<std::optional<Rational>> out(n);
  out[FiniteAbelianGroup::identity()] = Rational(1);
  std::size_t i = 0;
  while (i < n) {
    const Rational level = rho[by_height[i]];
    for (; i < n && rho[by_height[i]] == level; ++i) detail::adjoin(g, member, by_height[i]);
    for (std::size_t s = 0; s < n; ++s) {
      if (member[s] && !out[s]) out[s] = level;
    }
  }
  HeightTable table(n);
  for (std::size_t s = 0; s < n; ++s) table[s] = *out[s];
  return table;
}

// Subgroup generated by {g : rho(g) < r}.
inline ElementSet ball_subgroup(const HeightedGroup& G, const Rational& r) {
  if (r < 1) throw DomainError("ball radius must be >= 1");
  ElementSet gens;
  for (std::size_t s = 0; s < G.group.order(); ++s) {
    if (G.height[s] < r) gens.push_back(s);
  }
  return generated_subgroup(G.group, gens);
}

// {g : h(g) < r} or, with `closed`, {g : h(g) <= r}.
inline ElementSet sublevel_set(const HeightTable& h, const Rational& r, bool closed = false) {
  ElementSet out;
  for (std::size_t s = 0; s < h.size(); ++s) {
    if (closed ? h[s] <= r : h[s] < r) out.push_back(s);
  }
  return out;
}

inline ElementSet zero_set(const FiniteAbelianGroup& g, const HeightTable& h) {
  validate_height(g, h);
  return sublevel_set(h, Rational(1), true);
}

inline bool is_subgroup(const FiniteAbelianGroup& g, const ElementSet& s) {
  std::vector<bool> member(g.order(), false);
  for (std::size_t x : s) member[x] = true;
  if (!member[FiniteAbelianGroup::identity()]) return false;
  for (std::size_t a : s) {
    if (!member[g.inverse(a)]) return false;
    for (std::size_t b : s) {
      if (!member[g.op(a, b)]) return false;
    }
  }
  return true;
}

inline bool pointwise_le(const HeightTable& a, const HeightTable& b) {
  if (a.size() != b.size()) throw DomainError("height tables of different sizes");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline HeightTable pointwise_min(const HeightTable& a, const HeightTable& b) {
  if (a.size() != b.size()) throw DomainError("height tables of different sizes");
  HeightTable out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

// h <= rho pointwise must give h_1 <= rho_1 and h_inf <= rho_inf.
inline bool ordering_preserved(const HeightedGroup& G, const HeightTable& h) {
  if (!pointwise_le(h, G.height)) throw DomainError("ordering check needs h <= rho");
  const HeightedGroup H = G.with_height(h);
  return pointwise_le(rho1_exact(H), rho1_exact(G)) && pointwise_le(rho_inf_exact(H), rho_inf_exact(G));
}

// ---------------------------------------------------------------------------
// Executable checks of the structural theorems for one heighted group.

struct TheoremCheck {
  std::string name;
  bool passed;
  std::string detail;
};

namespace detail {

// Zero set is a subgroup, h is constant on its cosets, and log h(a b^-1) is
// a metric on the quotient (symmetry, separation, triangle inequality).
inline std::vector<TheoremCheck> metric_height_properties(const std::string& tag, const FiniteAbelianGroup& g,
                                                          const HeightTable& h) {
  std::vector<TheoremCheck> out;
  const ElementSet z = zero_set(g, h);
  out.push_back({"zero set of " + tag + " is a subgroup", is_subgroup(g, z),
                 std::to_string(z.size()) + " elements"});
  bool coset_constant = true;
  for (std::size_t a = 0; a < g.order() && coset_constant; ++a) {
    for (std::size_t zeta : z) {
      if (h[g.op(zeta, a)] != h[a]) {
        coset_constant = false;
        break;
      }
    }
  }
  out.push_back({tag + " is constant on zero-set cosets", coset_constant, ""});
  // On G/Z: d(aZ, bZ) = h(a b^-1). It is translation invariant, so with
  // x = a b^-1, y = b c^-1 the three-point triangle inequality is
  // h(x y) <= h(x) h(y) over all pairs.
  bool metric = true;
  std::vector<bool> in_z(g.order(), false);
  for (std::size_t x : z) in_z[x] = true;
  for (std::size_t x = 0; x < g.order() && metric; ++x) {
    if (h[x] != h[g.inverse(x)]) metric = false;
    if ((h[x] == 1) != in_z[x]) metric = false;
    for (std::size_t y = x; y < g.order() && metric; ++y) {
      if (h[g.op(x, y)] > h[x] * h[y]) metric = false;
    }
  }
  out.push_back({"log " + tag + " is a metric on G/Z", metric, ""});
  return out;
}

}  // namespace detail

// Runs every check on G.
inline std::vector<TheoremCheck> check_framework_theorems(const HeightedGroup& G) {
  std::vector<TheoremCheck> out;
  const auto& g = G.group;
  const HeightTable& rho = G.height;
  const HeightTable r1 = rho1_exact(G);
  const HeightTable rinf = rho_inf_exact(G);
  const HeightClass cls = classify_height(G);
  const HeightClass cls1 = classify_height(g, r1);
  const HeightClass clsinf = classify_height(g, rinf);
  auto is_metric = [](HeightClass c) { return c != HeightClass::plain; };

  out.push_back({"rho_1 is a metric height below rho",
                 is_metric(cls1) && pointwise_le(r1, rho), to_string(cls1)});
  // Dominance, tested with the metric heights sigma = rho_inf and sigma = (min(rho, rho_inf))_1.
  const HeightTable sigma = rho1_exact(G.with_height(pointwise_min(rho, rinf)));
  out.push_back({"rho_1 dominates every metric sigma <= rho",
                 pointwise_le(rinf, r1) && pointwise_le(sigma, r1), ""});
  out.push_back({"rho = rho_1 iff rho is metric", (rho == r1) == is_metric(cls), to_string(cls)});
  out.push_back({"(rho_1)_1 = rho_1", rho1_exact(G.with_height(r1)) == r1, ""});

  out.push_back({"rho_inf is strong and below rho_1",
                 clsinf == HeightClass::strong && pointwise_le(rinf, r1), to_string(clsinf)});
  const HeightTable sigma_inf = rho_inf_exact(G.with_height(pointwise_min(rho, rinf)));
  out.push_back({"rho_inf dominates every strong sigma <= rho", pointwise_le(sigma_inf, rinf), ""});
  out.push_back({"rho = rho_inf iff rho is strong", (rho == rinf) == (cls == HeightClass::strong),
                 to_string(cls)});
  const HeightTable r1inf = rho_inf_exact(G.with_height(r1));
  const HeightTable rinf1 = rho1_exact(G.with_height(rinf));
  const HeightTable rinfinf = rho_inf_exact(G.with_height(rinf));
  out.push_back({"rho_inf = (rho_1)_inf = (rho_inf)_1 = (rho_inf)_inf",
                 rinf == r1inf && rinf == rinf1 && rinf == rinfinf, ""});

  for (auto& c : detail::metric_height_properties("rho_1", g, r1)) out.push_back(std::move(c));
  for (auto& c : detail::metric_height_properties("rho_inf", g, rinf)) out.push_back(std::move(c));
  if (is_metric(cls)) {
    for (auto& c : detail::metric_height_properties("rho", g, rho)) out.push_back(std::move(c));
  }

  // Open balls B_r = S_r for r in the value set and the midpoints between
  // consecutive values (plus one beyond the top); closed balls likewise,
  // since infima are attained on a finite group.
  std::vector<Rational> values(rho.begin(), rho.end());
  values.insert(values.end(), rinf.begin(), rinf.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Rational> radii = values;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) radii.push_back((values[i] + values[i + 1]) / 2);
  radii.push_back(values.back() + 1);
  // B_1 is empty while S_1 = {1}; the identity is about radii above 1.
  std::erase_if(radii, [](const Rational& r) { return r <= 1; });
  bool open_ok = true, closed_ok = true;
  for (const auto& r : radii) {
    if (ball_subgroup(G, r) != sublevel_set(rinf, r)) open_ok = false;
    if (generated_subgroup(g, sublevel_set(rho, r, true)) != sublevel_set(rinf, r, true)) closed_ok = false;
  }
  out.push_back({"open ball B_r = S_r", open_ok, std::to_string(radii.size()) + " radii"});
  out.push_back({"closed ball analogue (finite group)", closed_ok, std::to_string(radii.size()) + " radii"});

  // h = (rho + 1) / 2 off the identity is a height with h <= rho.
  HeightTable h(rho.size());
  for (std::size_t a = 0; a < h.size(); ++a) h[a] = a == FiniteAbelianGroup::identity() ? Rational(1) : (rho[a] + 1) / 2;
  out.push_back({"h <= rho implies h_1 <= rho_1 and h_inf <= rho_inf", ordering_preserved(G, h), ""});
  return out;
}

}  // namespace heights
