#pragma once

// Gauss-Legendre quadrature on [0, 1]: integral over [a, b] of f is
// approximated by (b-a) * sum_g weight[g] * f(a + (b-a)*node[g]).
// The 5-point rule is exact for polynomials up to degree 9, which covers
// every polynomial integrand assembled in this project exactly.

#include <array>
#include <cmath>

namespace parasol {

struct GaussRule5 {
  std::array<double, 5> node;
  std::array<double, 5> weight;
};

inline const GaussRule5& gauss5() {
  static const GaussRule5 rule = [] {
    GaussRule5 r;
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    const std::array<double, 5> x{-b, -a, 0.0, a, b};
    const std::array<double, 5> w{wb, wa, 128.0 / 225.0, wa, wb};
    for (int g = 0; g < 5; ++g) {
      r.node[g] = 0.5 * (x[g] + 1.0);
      r.weight[g] = 0.5 * w[g];
    }
    return r;
  }();
  return rule;
}

}  // namespace parasol
