#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "chf/grid.hpp"
#include "chf/intertwiners.hpp"
#include "chf/lattice.hpp"
#include "chf/types.hpp"

// Bound-state layer: the kernel family carries the discrete spectra of four
// potential families through the substitution psi(y) = f(x(y)) / phi(x(y)),
// phi = [e^x / (x^c y'(x))]^(1/2), with a power-law coordinate change per
// family.  Parameter labels live on the primed lattice (a' = 2a - c,
// c' = c - 1); each state has a plus representation (c' > 0) and a redundant
// minus representation (a', -c') describing the same wavefunction.

namespace chf::qm {

enum class PotentialKind { Oscillator1D, OscillatorN, CoulombN, Morse };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::Oscillator1D;
  int dim = 1;           // N of the radial families
  long long ell = 0;     // angular-momentum label of the radial families
  double alpha = 1.0;    // Morse range parameter
  double lambda = 1.0;   // Morse depth parameter
};

PotentialSpec oscillator_1d();
PotentialSpec oscillator_radial(int dim, long long ell);
PotentialSpec coulomb_radial(int dim, long long ell);
PotentialSpec morse(double alpha, double lambda);

const char* potential_kind_name(PotentialKind k);

// V(y) in the units fixed by each dictionary:
//   oscillator 1D:  y^2
//   oscillator N:   y^2 + (2l+N-1)(2l+N-3) / (4 y^2)
//   Coulomb N:      -2/y + (2l+N-1)(2l+N-3) / (4 y^2)
//   Morse:          (alpha/2)^2 (e^{2 alpha y} - 2 lambda e^{alpha y})
double potential_value(const PotentialSpec& pot, double y);

// Coordinate change with y'(x) = mu * x^s:
//   Sqrt    y = x^(1/2)          (oscillators)
//   Linear  x = scale * y        (Coulomb, scale = 2 sqrt(-E))
//   Log     x = e^(scale * y)    (Morse, scale = alpha)
struct VariableMap {
  enum class Kind { Sqrt, Linear, Log };
  Kind kind = Kind::Sqrt;
  double scale = 1.0;

  double x_of_y(double y) const;
  double y_of_x(double x) const;
  double mu() const;
  double s() const;
};

// phi(a,c; x) = [e^x / (x^c y'(x))]^(1/2); psi = f / phi.  Requires x > 0.
double phi_factor(const ChfParams& p, const VariableMap& map, double x);

// Label dictionary of one potential family: primed coordinates, energy, and
// coordinate change of the k-th bound state (k = number of radial nodes).
struct ParamDictionary {
  PotentialSpec pot;

  double ap(long long k) const;        // a' of the plus representation
  double cp(long long k) const;        // c' of the plus representation
  double energy(long long k) const;
  // Closed-form spectrum relations used by the checks:
  double energy_from_ap(double ap) const;  // oscillators: -2a'; Coulomb: -(2/a')^2
  double energy_from_cp(double cp) const;  // Morse: -(alpha^2/4) c'^2
  // Number of bound states (-1 = infinite).
  long long max_states() const;
  VariableMap map(long long k) const;
};

ParamDictionary param_dictionary(const PotentialSpec& pot);

enum class BranchSide { plus, minus };
const char* branch_name(BranchSide b);

struct Wavefunction {
  PotentialSpec pot;
  BranchSide branch = BranchSide::plus;
  long long k = 0;       // state index = interior node count
  double energy = 0.0;
  double ap = 0.0;       // primed coordinates of element.p
  double cp = 0.0;
  KernelElement element; // alpha M + beta u at the (possibly integer-c) point
  VariableMap map;
  double y_lo = 0.0;     // natural support: |psi| >= ~1e-12 of its peak
  double y_hi = 0.0;

  // Unnormalized psi(y).  The 1D oscillator is extended to the full line
  // with the parity of k; radial families require y > 0 (DomainY).
  // Integer-c second-solution components evaluate through the defining
  // formula with folded exponents, never through the guarded kummer_u2.
  double eval(double y) const;

  // Exact lattice classification when (a', c') sits on the half-integer
  // grid; nullopt otherwise.
  std::optional<lattice::SectorClass> lattice_class() const;
};

// The k-th bound state.  The kernel element is M when a is a non-positive
// integer, otherwise u when a-c+1 is one; anything else is not square
// integrable and raises NotBoundState.
Wavefunction bound_state(const PotentialSpec& pot, long long k,
                         BranchSide branch = BranchSide::plus);

// Closed-form energies of states 0..levels-1.
std::vector<double> spectrum(const PotentialSpec& pot, long long levels);

struct ResidualReport {
  double max_residual = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
  int n = 0;
  double h = 0.0;
};

// max_i |-psi''_fd + (V - E) psi| / (|E psi| + |V psi| + eps) over an n-point
// grid on [y_lo, y_hi] clipped 2% at each end, with the second derivative
// from the central h-stencil and eps = 0.05 * max_i (|E psi| + |V psi|).
ResidualReport schrodinger_residual(const std::function<double(double)>& psi,
                                    const PotentialSpec& pot, double energy,
                                    double y_lo, double y_hi, int n = 2001,
                                    double h = 5e-4,
                                    grid::Exec ex = grid::Exec::parallel);
ResidualReport schrodinger_residual(const Wavefunction& w, int n = 2001,
                                    double h = 5e-4,
                                    grid::Exec ex = grid::Exec::parallel);

long long count_nodes(const std::function<double(double)>& psi, double y_lo,
                      double y_hi, int n = 4097,
                      grid::Exec ex = grid::Exec::parallel);
long long count_nodes(const Wavefunction& w, int n = 4097,
                      grid::Exec ex = grid::Exec::parallel);

// sqrt of the trapezoid quadrature of psi^2 over [y_lo, y_hi].
double l2_norm(const std::function<double(double)>& psi, double y_lo,
               double y_hi, int n = 4097,
               grid::Exec ex = grid::Exec::parallel);

// One A/B ladder step on a bound state: the element moves by the symbolic
// coefficient action (scale preserved) and the labels move by the induced
// primed step.  Raises Annihilated when the coefficient action kills the
// element, NotBoundState when the target labels leave the family (for Morse
// the target lambda differs; the returned spec carries it).
Wavefunction ladder_on_wavefunction(ops::OpKind op, const Wavefunction& w);

struct CrossMapped {
  PotentialSpec pot;       // target potential with its derived labels
  double energy = 0.0;
  long long expected_nodes = 0;
  double y_lo = 0.0, y_hi = 0.0;
  std::function<double(double)> psi;
  long long n_src = 0;     // source oscillator label n = 2k + ell + 1
  long long ell_src = 0;
};

// Planar (N=2) oscillator state -> Morse state of the same alpha:
// psi_M(y) = e^(-alpha y / 4) psi_O(e^(alpha y / 2)), lambda = n, nu = ell.
// Requires ell >= 1 (LabelConstraint).
CrossMapped cross_map_oscillator_morse(const Wavefunction& osc, double alpha);

// Planar oscillator state with odd n -> planar Coulomb state:
// psi_C(y) = y^(1/4) psi_O(2 (y/n)^(1/2)), n_C = (n-1)/2, l_C = ell/2,
// E_C = -4/n^2.  Node count is preserved.
CrossMapped cross_map_oscillator_coulomb(const Wavefunction& osc);

}  // namespace chf::qm
