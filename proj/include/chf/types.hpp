#pragma once

#include <stdexcept>
#include <string>

// Core value types shared by every layer: parameter pairs, kernel elements,
// series controls, and the error taxonomy.

namespace chf {

inline constexpr const char* kVersion = "0.1.0";

// Half-width of the exclusion band around integers used by every integer
// test on real parameters (pole detection, phase materialization, label
// rounding).
inline constexpr double kIntegerBand = 1e-9;

enum class Err {
  BadInput,          // malformed or out-of-contract arguments
  PoleAtC,           // M(a,c;x) undefined: c within the band of a non-positive integer
  IntegerC,          // second solution undefined at integer c
  DomainX,           // x outside the domain of the requested expression
  DomainY,           // physical coordinate outside the potential's domain
  NoConvergence,     // series failed to meet the stopping rule within max_terms
  CoefficientPole,   // an induced-coefficient denominator vanishes
  PhaseNotReal,      // reflection phase (-1)^(1-c) is not real (1-c not an integer)
  ReflectionDomain,  // reflection operator applied to a second-solution component
  NotInSector,       // lattice point outside the structure the operation covers
  NotBoundState,     // labels violate the bound-state constraints
  LabelConstraint,   // cross-map label preconditions not met
  Annihilated,       // ladder step lands on the operator's annihilation line
};

const char* err_name(Err e);

class ChfError : public std::runtime_error {
 public:
  ChfError(Err code, const std::string& msg);
  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] void raise(Err code, const std::string& msg);

// Parameter pair (a, c) of the operator x f'' + (c - x) f' - a f.
struct ChfParams {
  double a = 0.0;
  double c = 0.0;
};

// Element alpha * M(a,c;x) + beta * u(a,c;x) of the operator's kernel, where
// M is the regular solution and u(a,c;x) = x^(1-c) M(a-c+1, 2-c; x).
struct KernelElement {
  ChfParams p;
  double alpha = 1.0;
  double beta = 0.0;
};

struct SeriesConfig {
  double rel_tol = 1e-14;
  int max_terms = 10000;
};

// Process-wide defaults picked up by every evaluation that is not handed an
// explicit config (the CLI bumps max_terms from CHF_MAX_TERMS at startup).
SeriesConfig& global_series_config();

// Per-evaluation diagnostics. `saturated` flags arguments outside the box
// |a|,|c|,|x| <= 50 where the advertised accuracy is no longer guaranteed.
struct EvalInfo {
  int terms_used = 0;
  bool saturated = false;
};

bool near_integer(double v, double tol = kIntegerBand);
// True when v lies within `tol` of an integer <= 0.
bool is_nonpositive_integer(double v, double tol = kIntegerBand);
// Nearest integer as a long long (no tolerance check).
long long llround_checked(double v);

}  // namespace chf
