#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace stance::oracle {

// Chi-square of the 2x2 table
//              class   other
//   term         a       b
//   no term      c       d
// as N (ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)), with 0 when a margin is empty.
inline double contingency_chi_square(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const long double n = a + b + c + d;
  const long double den = static_cast<long double>(a + b) * (c + d) * (a + c) * (b + d);
  if (den == 0) return 0.0;
  const long double diff = static_cast<long double>(a) * d - static_cast<long double>(b) * c;
  return static_cast<double>(n * diff * diff / den);
}

// Exhaustive minimisation of 0.5 a'Qa - sum(a) over a grid with spacing
// `step` inside the box [0, upper_i]; each axis also includes its upper
// bound. Q is the signed Gram matrix y_i y_j <x_i, x_j>.
inline double grid_min_dual4(const std::array<std::array<double, 4>, 4>& q,
                             const std::array<double, 4>& upper, double step) {
  std::array<std::vector<double>, 4> axis;
  for (int i = 0; i < 4; ++i) {
    for (double v = 0.0; v < upper[i]; v = step * static_cast<double>(axis[i].size())) axis[i].push_back(v);
    axis[i].push_back(upper[i]);
  }
  double best = std::numeric_limits<double>::infinity();
  for (double a0 : axis[0]) {
    const double f0 = 0.5 * q[0][0] * a0 * a0 - a0;
    for (double a1 : axis[1]) {
      const double f1 = f0 + a1 * (q[0][1] * a0 + 0.5 * q[1][1] * a1) - a1;
      for (double a2 : axis[2]) {
        const double f2 = f1 + a2 * (q[0][2] * a0 + q[1][2] * a1 + 0.5 * q[2][2] * a2) - a2;
        const double lin = q[0][3] * a0 + q[1][3] * a1 + q[2][3] * a2 - 1.0;
        const double half = 0.5 * q[3][3];
        for (double a3 : axis[3]) {
          best = std::min(best, f2 + a3 * (lin + half * a3));
        }
      }
    }
  }
  return best;
}

}  // namespace stance::oracle
