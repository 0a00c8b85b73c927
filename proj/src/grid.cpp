#include "chf/grid.hpp"

#include <cmath>
#include <exception>

#include "chf/types.hpp"

namespace chf::grid {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) raise(Err::BadInput, "linspace needs at least one point");
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
  xs[static_cast<std::size_t>(n - 1)] = hi;
  return xs;
}

void for_index(int n, const std::function<void(int)>& body, Exec ex) {
#ifdef _OPENMP
  if (ex == Exec::parallel) {
    std::exception_ptr first_error;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical
        {
          if (!first_error) first_error = std::current_exception();
        }
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)ex;
#endif
  for (int i = 0; i < n; ++i) body(i);
}

std::vector<double> map_grid(const std::vector<double>& xs,
                             const std::function<double(double)>& fn,
                             Exec ex) {
  std::vector<double> out(xs.size());
  for_index(static_cast<int>(xs.size()),
            [&](int i) {
              out[static_cast<std::size_t>(i)] =
                  fn(xs[static_cast<std::size_t>(i)]);
            },
            ex);
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    const double a = std::fabs(x);
    if (a > m) m = a;
  }
  return m;
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    raise(Err::BadInput, "trapezoid needs matching grids of >= 2 points");
  }
  double s = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    s += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
  }
  return s;
}

long long count_sign_changes(const std::vector<double>& ys, double floor) {
  long long changes = 0;
  int last = 0;
  for (double y : ys) {
    if (std::fabs(y) <= floor) continue;
    const int s = y > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace chf::grid
