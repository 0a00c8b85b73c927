#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chf/grid.hpp"

// Randomized identity suites behind `chf check` and the acceptance gate.
// Sampling is deterministic per seed: the sample list is drawn serially,
// deviations are evaluated one slot per sample (parallel when asked), and
// the maximum is reduced serially, so results are byte-stable across
// execution policies.

namespace chf::suites {

struct CheckRow {
  std::string identity;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  long long samples = 0;
  bool pass = false;
};

// mt19937_64 with 53-bit mantissa draws; uniform() never returns hi.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double unit();
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 eng_;
};

// Parameter draws shared by the operator suites: a uniform in [-3.5, 3.5],
// c uniform in [-4, 4] rejected until it clears every integer by 0.05 and
// the coefficient denominators c and 2-c by 0.1.
double sample_a(Rng& rng);
double sample_c(Rng& rng);

// Table action vs differential expression for all eleven operators.
// Tolerance 1e-9.
std::vector<CheckRow> intertwining_suite(long long samples, std::uint64_t seed,
                                         grid::Exec ex = grid::Exec::parallel);

// The eight ladder factorizations on kernel elements (tolerance 1e-9) plus
// the two polynomial probe rows on x^2 (tolerance 1e-12, exact coefficients).
std::vector<CheckRow> factorization_suite(long long samples,
                                          std::uint64_t seed,
                                          grid::Exec ex = grid::Exec::parallel);

// The seven composition relations and Q Q = id.  Tolerance 1e-10.
std::vector<CheckRow> composition_suite(long long samples, std::uint64_t seed,
                                        grid::Exec ex = grid::Exec::parallel);

// Reflection formula M(a,c;x) = e^x M(c-a,c;-x) on a,c in [0.4, 2.5],
// x in [-10, 10].  Tolerance 1e-12 relative to |lhs| + |rhs|.
std::vector<CheckRow> kummer_suite(long long samples, std::uint64_t seed,
                                   grid::Exec ex = grid::Exec::parallel);

bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace chf::suites
