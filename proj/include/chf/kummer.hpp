#pragma once

#include "chf/types.hpp"

// Power-series evaluation of the confluent hypergeometric kernel.
//
// kummer_m computes M(a,c;x) = sum_k (a)_k / ((c)_k k!) x^k by the term
// recurrence t_{k} = t_{k-1} * (a+k-1) x / ((c+k-1) k).  Accumulation is done
// in extended precision so that the alternating regime (x < 0) stays accurate
// through the e^x-sized cancellation; all interfaces are double.
//
// Stopping rule: |term| < rel_tol * |partial sum| for three consecutive
// terms, or exact termination when (a)_k hits zero (polynomial case).

namespace chf {

double kummer_m(double a, double c, double x,
                const SeriesConfig& cfg = global_series_config(),
                EvalInfo* info = nullptr);

// Second kernel solution u(a,c;x) = x^(1-c) M(a-c+1, 2-c; x).
// Requires x > 0 (DomainX) and c away from integers (IntegerC).
double kummer_u2(double a, double c, double x,
                 const SeriesConfig& cfg = global_series_config(),
                 EvalInfo* info = nullptr);

namespace detail {
// The defining formula without the integer-c guard.  The inner M parameters
// (a-c+1, 2-c) can be perfectly regular at integer c; bridge evaluations
// (minus branches, boundary closed forms) go through here.
double kummer_u2_unguarded(double a, double c, double x,
                           const SeriesConfig& cfg = global_series_config(),
                           EvalInfo* info = nullptr);
}  // namespace detail

double eval_kernel(const KernelElement& f, double x,
                   const SeriesConfig& cfg = global_series_config());

// d/dx maps the kernel of (a,c) into the kernel of (a+1,c+1) with exact
// coefficient shifts; derivatives are evaluated through that shift rather
// than finite differences.
KernelElement derivative_element(const KernelElement& f);
double eval_derivative(const KernelElement& f, double x, int order,
                       const SeriesConfig& cfg = global_series_config());

// |x f'' + (c - x) f' - a f| normalized by |x f''| + |(c-x) f'| + |a f| + 1.
double kernel_residual(const KernelElement& f, double x,
                       const SeriesConfig& cfg = global_series_config());

}  // namespace chf
