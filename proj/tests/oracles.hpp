#pragma once

// Slow reference evaluators used only by the tests: a brute-force series sum
// with no early-exit heuristics, and high-order finite differences.  The
// production code must never include this header.

#include <cmath>

namespace oracle {

#if defined(__SIZEOF_FLOAT128__) && defined(__GNUC__)
using Wide = __float128;
#else
using Wide = long double;
#endif

// Term-by-term sum of sum_k (a)_k / (c)_k x^k / k! in extended precision.
// No stopping rule: runs to the term-count cap or hard underflow, so any
// disagreement with the production evaluator is the production code's fault.
inline double kummer_m_brute(double a, double c, double x, int terms = 20000) {
  Wide sum = 1;
  Wide term = 1;
  for (int k = 0; k < terms; ++k) {
    const Wide num = static_cast<Wide>(a) + k;
    if (num == 0) break;  // polynomial: every later term vanishes
    const Wide den = static_cast<Wide>(c) + k;
    term *= num / den * static_cast<Wide>(x) / static_cast<Wide>(k + 1);
    sum += term;
    const double t = std::fabs(static_cast<double>(term));
    const double s = std::fabs(static_cast<double>(sum));
    if (k > 60 && t < 1e-40 * (s + 1.0)) break;
  }
  return static_cast<double>(sum);
}

inline double u2_brute(double a, double c, double x) {
  return std::pow(x, 1.0 - c) * kummer_m_brute(a - c + 1.0, 2.0 - c, x);
}

// Five-point central differences, O(h^4).
template <class F>
double d1_fd(F f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12 * h);
}

template <class F>
double d2_fd(F f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
          f(x - 2 * h)) /
         (12 * h * h);
}

inline double rel_dev(double lhs, double rhs) {
  return std::fabs(lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs) + 1e-30);
}

}  // namespace oracle
