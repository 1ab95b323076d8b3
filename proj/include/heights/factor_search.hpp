#pragma once

// Bounded factorisation search for upper bounds on
//
//   M_1(alpha)   = inf prod M(alpha_n)
//   M_inf(alpha) = inf max  M(alpha_n)
//
// over products of members of a finite pool. Products are exact in the
// ambient group; only the measures are enclosures. Each report carries an
// independent lower bound so that lower = upper pins the true value.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "heights/bigfloat.hpp"
#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/measure.hpp"
#include "heights/quad_field.hpp"
#include "heights/surd.hpp"

namespace heights {

// Per-type operations used by the search. Specialised below for Rational,
// QuadElement and SurdCoset.
template <typename T>
struct Ambient;

template <>
struct Ambient<Rational> {
  static Rational identity(const Rational&) { return 1; }
  static bool is_identity(const Rational& x) { return x == 1; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational mul(const Rational& x, const Rational& y) { return x * y; }
  static Rational div(const Rational& x, const Rational& y) { return x / y; }
  static RealEnclosure measure(const Rational& x, const mpq_class&) {
    return RealEnclosure::exact(rational_mahler_measure(x), kDefaultPrecision);
  }
  static RealEnclosure height(const Rational& x, const mpq_class& tol) { return measure(x, tol); }
  static BigInt nonunit_prime(const Rational& x) {
    const auto p = largest_prime_factor(BigInt(abs(x.get_num()) * x.get_den()));
    return p ? *p : BigInt(1);
  }
  static std::string name(const Rational& x) { return to_string(x); }
  // Positive before negative among equal magnitudes.
  static bool canonical_less(const Rational& x, const Rational& y) {
    const Rational ax = abs(x), ay = abs(y);
    return ax != ay ? ax < ay : x > y;
  }
};

template <>
struct Ambient<QuadElement> {
  static QuadElement identity(const QuadElement& x) { return QuadElement::rational(1, x.disc()); }
  static bool is_identity(const QuadElement& x) { return x.is_one(); }
  static bool is_zero(const QuadElement& x) { return x.is_zero(); }
  static QuadElement mul(const QuadElement& x, const QuadElement& y) { return x * y; }
  static QuadElement div(const QuadElement& x, const QuadElement& y) { return x / y; }
  static RealEnclosure measure(const QuadElement& x, const mpq_class& tol) { return qf_mahler_measure(x, tol); }
  static RealEnclosure height(const QuadElement& x, const mpq_class& tol) { return qf_weil_height(x, tol); }
  static BigInt nonunit_prime(const QuadElement& x) {
    const auto p = largest_nonunit_prime(qf_minimal_polynomial(x));
    return p ? *p : BigInt(1);
  }
  static std::string name(const QuadElement& x) { return to_string(x); }
  static bool canonical_less(const QuadElement& x, const QuadElement& y) {
    const auto key = [](const QuadElement& z) {
      return std::make_tuple(Rational(abs(z.a())), Rational(abs(z.b())), z.a() < 0, z.b() < 0);
    };
    return key(x) < key(y);
  }
};

template <>
struct Ambient<SurdCoset> {
  static SurdCoset identity(const SurdCoset&) { return {}; }
  static bool is_identity(const SurdCoset& x) { return x.is_identity(); }
  static bool is_zero(const SurdCoset&) { return false; }
  static SurdCoset mul(const SurdCoset& x, const SurdCoset& y) { return x * y; }
  static SurdCoset div(const SurdCoset& x, const SurdCoset& y) { return x / y; }
  // H^d has integral exponents, so the measure is an exact integer.
  static RealEnclosure measure(const SurdCoset& x, const mpq_class&) {
    const FormalProduct v = surd_h_to_the_d(x).value();
    return RealEnclosure::exact(heights::detail::integral_power_product(v, 1), kDefaultPrecision);
  }
  static RealEnclosure height(const SurdCoset& x, const mpq_class&) { return surd_weil_height(x).float_view(); }
  static BigInt nonunit_prime(const SurdCoset& x) { return surd_m_infinity(x); }
  static std::string name(const SurdCoset& x) { return to_string(x); }
  static bool canonical_less(const SurdCoset& x, const SurdCoset& y) { return x < y; }
};

inline constexpr std::size_t kDefaultMaxLength = 4;

// Duplicate-free, identity-free members sorted by measure (ties by the
// canonical order: smaller coordinates first, positive before negative), with their measure enclosures.
template <typename T>
class FactorPool {
 public:
  FactorPool(const std::vector<T>& members, std::size_t max_length = kDefaultMaxLength,
             const mpq_class& tol = default_tolerance())
      : max_length_(max_length), tol_(tol) {
    if (max_length_ == 0) throw DomainError("max_length must be positive");
    std::map<T, bool> seen;
    for (const T& x : members) {
      if (Ambient<T>::is_zero(x)) throw DomainError("pool members must be nonzero");
      if (Ambient<T>::is_identity(x) || seen.count(x)) continue;
      seen.emplace(x, true);
      entries_.push_back({x, Ambient<T>::measure(x, tol_)});
    }
    std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
      const int c = compare(a.measure.lo(), b.measure.lo());
      return c != 0 ? c < 0 : Ambient<T>::canonical_less(a.element, b.element);
    });
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].element, i);
  }

  struct Entry {
    T element;
    RealEnclosure measure;
  };

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t max_length() const { return max_length_; }
  const mpq_class& tolerance() const { return tol_; }
  std::optional<std::size_t> find(const T& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Entry> entries_;
  std::map<T, std::size_t> index_;
  std::size_t max_length_;
  mpq_class tol_;
};

enum class BoundMode { product, max };

inline const char* to_string(BoundMode m) { return m == BoundMode::product ? "product" : "max"; }

template <typename T>
struct BoundReport {
  RealEnclosure upper;
  std::vector<T> witness;  // multiplies exactly to the target
  Rational lower;
  BoundMode mode;
  std::size_t explored = 0;  // complete factorisations visited

  // lower = upper exactly (upper is a point enclosure at the lower bound).
  bool pinned() const { return compare(upper.lo(), lower) == 0 && compare(upper.hi(), lower) == 0; }
  // Weaker form: lower lies inside the upper enclosure.
  bool pinned_within(const mpq_class& tol) const {
    return compare(upper.hi(), lower + tol) <= 0 && compare(upper.lo(), lower - tol) >= 0;
  }
};

// Called with each complete factorisation the search visits.
template <typename T>
using WitnessVisitor = std::function<void(const std::vector<T>&)>;

namespace detail {

template <typename T>
class FactorSearch {
 public:
  FactorSearch(const T& target, const FactorPool<T>& pool, BoundMode mode, const WitnessVisitor<T>& visit)
      : target_(target), pool_(pool), mode_(mode), visit_(visit) {}

  void run(RealEnclosure& best, std::vector<T>& witness, std::size_t& explored) {
    best_ = &best;
    witness_ = &witness;
    explored_ = &explored;
    for (std::size_t len = 1; len <= pool_.max_length(); ++len) {
      length_ = len;
      chosen_.clear();
      extend(0, Ambient<T>::identity(target_), std::nullopt);
    }
  }

 private:
  RealEnclosure combine(const std::optional<RealEnclosure>& acc, const RealEnclosure& m) const {
    if (!acc) return m;
    return mode_ == BoundMode::product ? *acc * m : max(*acc, m);
  }

  // Current value cannot beat the incumbent once its lower end reaches the
  // incumbent's lower end (measures are >= 1, so adding factors never helps).
  bool hopeless(const RealEnclosure& v) const { return compare(v.lo(), best_->lo()) >= 0; }

  void extend(std::size_t start, const T& partial, const std::optional<RealEnclosure>& value) {
    if (chosen_.size() + 1 == length_) {
      const auto idx = pool_.find(Ambient<T>::div(target_, partial));
      if (!idx || *idx < start) return;
      chosen_.push_back(*idx);
      const RealEnclosure v = combine(value, pool_[*idx].measure);
      ++*explored_;
      std::vector<T> members;
      for (std::size_t i : chosen_) members.push_back(pool_[i].element);
      if (visit_) visit_(members);
      if (v.strictly_below(*best_)) {
        *best_ = v;
        *witness_ = std::move(members);
      }
      chosen_.pop_back();
      return;
    }
    for (std::size_t i = start; i < pool_.size(); ++i) {
      const RealEnclosure v = combine(value, pool_[i].measure);
      // Sorted by measure, so every later member is at least as bad.
      if (hopeless(v)) break;
      chosen_.push_back(i);
      extend(i, Ambient<T>::mul(partial, pool_[i].element), v);
      chosen_.pop_back();
    }
  }

  const T& target_;
  const FactorPool<T>& pool_;
  BoundMode mode_;
  const WitnessVisitor<T>& visit_;
  RealEnclosure* best_ = nullptr;
  std::vector<T>* witness_ = nullptr;
  std::size_t* explored_ = nullptr;
  std::size_t length_ = 1;
  std::vector<std::size_t> chosen_;
};

// Lower endpoint of the enclosure as an exact dyadic rational.
inline Rational lower_endpoint(const RealEnclosure& e) { return e.lo().to_rational(); }

template <typename T>
BoundReport<T> search_upper(const T& target, const FactorPool<T>& pool, BoundMode mode, const mpq_class& tol,
                            const WitnessVisitor<T>& visit) {
  using A = Ambient<T>;
  if (A::is_zero(target)) throw DomainError("target must be nonzero");
  BoundReport<T> report{RealEnclosure::exact(1L, kDefaultPrecision), {}, Rational(1), mode};
  if (A::is_identity(target)) return report;

  // The trivial factorisation [target] is the starting incumbent.
  report.upper = A::measure(target, tol);
  report.witness = {target};
  FactorSearch<T>(target, pool, mode, visit).run(report.upper, report.witness, report.explored);

  if (mode == BoundMode::max) {
    report.lower = Rational(A::nonunit_prime(target));
  } else {
    report.lower = lower_endpoint(A::height(target, tol));
  }
  if (compare(report.upper.hi(), report.lower - tol) < 0) {
    throw InvariantViolation("lower bound " + to_string(report.lower) + " exceeds upper bound " +
                             report.upper.hi().to_decimal(20));
  }
  // Witness must recompose exactly.
  T product = A::identity(target);
  for (const T& x : report.witness) product = A::mul(product, x);
  if (!(product == target)) throw InvariantViolation("witness does not multiply to the target");
  return report;
}

}  // namespace detail

// Minimal max-measure over products of at most max_length pool members equal
// to target; lower bound is the largest prime at which target is not a unit.
template <typename T>
BoundReport<T> search_minf_upper(const T& target, const FactorPool<T>& pool, const mpq_class& tol = default_tolerance(),
                                 const std::type_identity_t<WitnessVisitor<T>>& visit = {}) {
  return detail::search_upper(target, pool, BoundMode::max, tol, visit);
}

// Minimal product-of-measures; lower bound is the Weil height of target.
template <typename T>
BoundReport<T> search_m1_upper(const T& target, const FactorPool<T>& pool, const mpq_class& tol = default_tolerance(),
                               const std::type_identity_t<WitnessVisitor<T>>& visit = {}) {
  return detail::search_upper(target, pool, BoundMode::product, tol, visit);
}

// ---------------------------------------------------------------------------

struct RootSplit {
  SurdCoset factor;      // x^(1/n)
  unsigned long copies;  // n
  SurdHeightValue height;
  RealEnclosure value;
};

// x = (x^(1/n))^n bounds H_inf(x) by H(x^(1/n)) = H(x)^(1/n).
inline RootSplit hinf_root_split_exact(const SurdCoset& x, unsigned long n) {
  if (n == 0) throw DomainError("n must be >= 1");
  const Rational inv(1, static_cast<long>(n));
  SurdCoset f = x.is_identity() ? x : x.pow(inv);
  SurdHeightValue h = surd_weil_height(f);
  RealEnclosure v = h.float_view();
  return {std::move(f), n, std::move(h), std::move(v)};
}

inline RealEnclosure hinf_root_split(const SurdCoset& x, unsigned long n) { return hinf_root_split_exact(x, n).value; }

}  // namespace heights
