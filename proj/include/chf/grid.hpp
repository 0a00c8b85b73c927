#pragma once

#include <functional>
#include <vector>

// Grid kernels used by the residual checks, node counters, quadrature, and
// the check suites.  Every kernel takes an execution policy; the parallel
// path (OpenMP when available) writes one output slot per index and keeps
// all reductions serial, so serial and parallel runs are bit-identical.

namespace chf::grid {

enum class Exec { serial, parallel };

std::vector<double> linspace(double lo, double hi, int n);

// body(i) for i in [0, n).  Exceptions thrown by body are captured and the
// first one is rethrown after the loop joins.
void for_index(int n, const std::function<void(int)>& body, Exec ex);

std::vector<double> map_grid(const std::vector<double>& xs,
                             const std::function<double(double)>& fn, Exec ex);

// Order-fixed serial reductions.
double max_abs(const std::vector<double>& v);
double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys);

// Sign changes between consecutive samples, ignoring entries with
// |y| <= floor (keeps grazing zeros and tail noise out of node counts).
long long count_sign_changes(const std::vector<double>& ys, double floor);

}  // namespace chf::grid
