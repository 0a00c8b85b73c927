#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "chf/intertwiners.hpp"
#include "chf/rational.hpp"
#include "chf/types.hpp"

// Exact geometry of the parameter plane in shifted coordinates
// a' = 2a - c, c' = c - 1.  In these coordinates the eleven operators act by
// unit steps, sign flips, and reflections; the states annihilated by A/B
// operators organize into two checkerboard sectors grown from the critical
// points (-1, 0) and (1, 0), plus two operator-invariant vertical lines at
// c' = +-1/2.  All membership tests are exact rational predicates; the
// supported denominators are 1 and 2, anything finer is rejected.

namespace chf::lattice {

struct PrimedParams {
  Rational ap;  // a'
  Rational cp;  // c'
};

PrimedParams to_primed(const Rational& a, const Rational& c);
std::pair<Rational, Rational> from_primed(const PrimedParams& q);

inline double primed_a(const ChfParams& p) { return 2.0 * p.a - p.c; }
inline double primed_c(const ChfParams& p) { return p.c - 1.0; }
inline ChfParams unprimed(double ap, double cp) {
  return {(ap + cp + 1.0) / 2.0, cp + 1.0};
}

// Nearest exact half-integer grid point, or nullopt when (ap, cp) is not
// within kIntegerBand of one (denominators above 2 fail the exactness gate).
std::optional<PrimedParams> rationalize(double ap, double cp);

// Unit-step / reflection action in primed coordinates; exact.
PrimedParams induced_primed(ops::OpKind k, const PrimedParams& q);

// Line c' = slope * a' + intercept on which the operator's leading
// coefficient vanishes.  Defined for the eight A/B operators.
struct AnnihilationLine {
  int slope;      // +1 or -1
  int intercept;  // +1 or -1
};
AnnihilationLine annihilation_line(ops::OpKind k);
bool on_annihilation_line(ops::OpKind k, const PrimedParams& q);

enum class SectorVariant {
  LIS_upper,
  LIS_lower,
  RIS_upper,
  RIS_lower,
  InvLineMinusHalf_left,
  InvLineMinusHalf_right,
  InvLinePlusHalf,
  CriticalPoint,
  Generic,
};

const char* sector_variant_name(SectorVariant v);

struct SectorClass {
  SectorVariant variant = SectorVariant::Generic;
  // Lattice indices when the point belongs to a sector or line lattice:
  // left/right sectors use the step counts (m, n) away from the corner;
  // line lattices use the step count along the line in the first slot.
  std::optional<std::pair<long long, long long>> indices;
  // Interior spine c' = 0 (both sub-triangles meet); reported as *_upper.
  bool on_spine = false;
  // Point lies on the sector boundary (one index is zero or it is a corner).
  bool on_boundary = false;
};

// Classification precedence: critical points, left sector, right sector,
// invariant-line lattices, Generic.  Exact; never throws for in-gate input.
SectorClass classify(const PrimedParams& q);

struct Orbit {
  std::vector<PrimedParams> points;  // start first, then each induced image
  bool stopped_on_annihilation = false;
};

// Iterate the operator's induced action k_steps times.  Stops early when a
// *post-step* point lands on the operator's annihilation line (the start
// point itself is not tested, so orbits may leave the line they start on).
Orbit orbit(ops::OpKind k, const PrimedParams& start, int k_steps);

// Closed-form kernel functions carried by the sector boundaries:
//   ConstSign(n):   (-1)^n            left sector, upper edge (corner n=0)
//   MonomialNeg(m): (-x)^m            left sector, lower edge
//   Exp:            e^x               right sector, upper edge and corner
//   MonomialExp(n): x^n e^x           right sector, lower edge
enum class SectorFormKind { ConstSign, MonomialNeg, Exp, MonomialExp };

struct SectorFunction {
  SectorFormKind kind = SectorFormKind::ConstSign;
  long long index = 0;  // n or m above; 0 for Exp
  PrimedParams at;      // the boundary point carrying this function

  double eval(double x) const;
  double deriv(double x) const;
  // (alpha, beta) representation at the integer unprimed parameters; the
  // beta component is meant for the unguarded u formula (c is an integer).
  KernelElement bridge() const;
  // The A/B operator whose coefficient row vanishes identically on this
  // boundary family.
  ops::OpKind annihilator() const;
  std::string name() const;
};

// Boundary membership is required: interior sector points have no closed
// form here and raise NotInSector.
SectorFunction sector_function(const PrimedParams& q);

struct SectorMapResult {
  PrimedParams image;
  SectorClass image_class;
};

// Q maps a sector onto itself exchanging the upper and lower sub-triangles;
// V exchanges the left and right sectors.  Only Q and V are accepted, and
// the argument must classify into a sector (or be one of its two corners).
SectorMapResult sector_intertwining_map(ops::OpKind k, const PrimedParams& q);

}  // namespace chf::lattice
