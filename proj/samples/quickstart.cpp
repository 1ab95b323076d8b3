// Minimal tour of the library.
#include <iostream>

#include "heights/factor_search.hpp"
#include "heights/measure.hpp"
#include "heights/metric.hpp"
#include "heights/surd.hpp"

int main() {
  using namespace heights;

  const IntPolynomial lehmer = parse_polynomial("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
  const RealEnclosure m = mahler_measure(lehmer);
  std::cout << "M(lehmer) in [" << m.lo().to_decimal(20, MPFR_RNDD) << ", " << m.hi().to_decimal(20, MPFR_RNDU)
            << "]\n";

  const QuadElement gamma = parse_quad("1+√5", 5);
  std::cout << "minimal polynomial of " << to_string(gamma) << ": " << print_polynomial(qf_minimal_polynomial(gamma))
            << "\n";

  std::vector<QuadElement> members;
  for (const auto& c : qf_enumerate_pool(5, 8, 2)) members.push_back(c.element);
  const auto report = search_minf_upper(gamma, FactorPool<QuadElement>(members));
  std::cout << "M_inf(" << to_string(gamma) << ") <= " << report.upper.hi().to_decimal(10) << ", >= "
            << to_string(report.lower) << (report.pinned() ? " (pinned)" : "") << "\n";

  const SurdCoset s = surd_from_rational(Rational(5, 6), 3);
  std::cout << "M_inf((5/6)^(1/3)) = " << surd_m_infinity(s).get_str() << "\n";

  const HeightedGroup G(FiniteAbelianGroup({5}), {1, 5, 2, 2, 5});
  std::cout << "rho_1 on Z/5:";
  for (const auto& v : rho1_exact(G)) std::cout << ' ' << v;
  std::cout << "\n";
}
