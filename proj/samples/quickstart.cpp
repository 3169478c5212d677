// Cesaro kernels, a fractional difference, and the Cesaro orbit of the Assani
// matrix, exact where possible.
#include <iostream>

#include "cesaro/cesaro.hpp"

using namespace cesaro;
using Q = Rational;

int main() {
  Order half(1, 2);
  auto k = kernel_values<Q>(half, 5);
  std::cout << "k^{1/2}(0..5):";
  for (auto& x : k) std::cout << " " << to_string(x);
  std::cout << "\n";

  // W^{1/2} undoes the sum of order 1/2
  FiniteSeq<Q> f{Q(1), Q(-1, 2), Q(3)};
  auto w = weyl_difference(weyl_sum(f, half), half);
  std::cout << "W^{1/2} W^{-1/2} f == f: " << (w == f ? "yes" : "no") << "\n";
  std::cout << "q_{1/2}(f) = " << to_string(q_alpha(f, half)) << "\n";

  // T^n grows linearly, the Cesaro means of order 1 stay bounded
  auto T = gallery_assani<Q>();
  auto orbit = cesaro_orbit(T, Order(1), 64);
  std::cout << "functional equation defect, n+m <= 64: "
            << to_string(functional_equation_sweep(orbit.table, orbit.alpha, 64).max_defect) << "\n";
  auto r = c_alpha_ratio(gallery_assani<double>(), Order(1), 2000);
  std::cout << "sup ||T_n|| / (n+1), n <= 2000: " << r.sup << "\n";

  auto res = pseudo_resolvent(gallery_assani<double>(), Order(1), 4.0, 200);
  std::cout << "||R(4)(4 - T) - I|| = " << res.inverse_defect << " (tail bound " << res.inverse_tail_bound << ")\n";
}
