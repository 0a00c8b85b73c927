#include "chf/schrodinger.hpp"

#include <cmath>
#include <string>

#include "chf/kummer.hpp"

namespace chf::qm {

namespace {

constexpr double kSupportDrop = 27.631021115928547;  // -ln(1e-12)

void validate_spec(const PotentialSpec& pot) {
  switch (pot.kind) {
    case PotentialKind::Oscillator1D:
      return;
    case PotentialKind::OscillatorN:
    case PotentialKind::CoulombN:
      if (pot.dim < 2) raise(Err::BadInput, "radial families need N >= 2");
      if (pot.ell < 0) raise(Err::BadInput, "angular momentum must be >= 0");
      return;
    case PotentialKind::Morse:
      if (!(pot.alpha > 0.0)) raise(Err::BadInput, "Morse alpha must be > 0");
      if (!(pot.lambda > 0.0)) raise(Err::BadInput, "Morse lambda must be > 0");
      return;
  }
  raise(Err::BadInput, "unknown potential kind");
}

double centrifugal_coeff(const PotentialSpec& pot) {
  const double t = 2.0 * static_cast<double>(pot.ell) + pot.dim - 1.0;
  return t * (t - 2.0) / 4.0;
}

}  // namespace

PotentialSpec oscillator_1d() {
  return {PotentialKind::Oscillator1D, 1, 0, 1.0, 1.0};
}
PotentialSpec oscillator_radial(int dim, long long ell) {
  return {PotentialKind::OscillatorN, dim, ell, 1.0, 1.0};
}
PotentialSpec coulomb_radial(int dim, long long ell) {
  return {PotentialKind::CoulombN, dim, ell, 1.0, 1.0};
}
PotentialSpec morse(double alpha, double lambda) {
  return {PotentialKind::Morse, 1, 0, alpha, lambda};
}

const char* potential_kind_name(PotentialKind k) {
  switch (k) {
    case PotentialKind::Oscillator1D: return "osc1d";
    case PotentialKind::OscillatorN: return "oscN";
    case PotentialKind::CoulombN: return "coulomb";
    case PotentialKind::Morse: return "morse";
  }
  return "?";
}

double potential_value(const PotentialSpec& pot, double y) {
  validate_spec(pot);
  switch (pot.kind) {
    case PotentialKind::Oscillator1D:
      return y * y;
    case PotentialKind::OscillatorN: {
      if (!(y > 0.0)) raise(Err::DomainY, "radial coordinate must be > 0");
      return y * y + centrifugal_coeff(pot) / (y * y);
    }
    case PotentialKind::CoulombN: {
      if (!(y > 0.0)) raise(Err::DomainY, "radial coordinate must be > 0");
      return -2.0 / y + centrifugal_coeff(pot) / (y * y);
    }
    case PotentialKind::Morse: {
      const double e = std::exp(pot.alpha * y);
      return 0.25 * pot.alpha * pot.alpha * (e * e - 2.0 * pot.lambda * e);
    }
  }
  raise(Err::BadInput, "unknown potential kind");
}

// --- coordinate changes ------------------------------------------------------

double VariableMap::x_of_y(double y) const {
  switch (kind) {
    case Kind::Sqrt: return y * y;
    case Kind::Linear: return scale * y;
    case Kind::Log: return std::exp(scale * y);
  }
  raise(Err::BadInput, "unknown map");
}

double VariableMap::y_of_x(double x) const {
  switch (kind) {
    case Kind::Sqrt:
      if (x < 0.0) raise(Err::DomainX, "sqrt map needs x >= 0");
      return std::sqrt(x);
    case Kind::Linear: return x / scale;
    case Kind::Log:
      if (!(x > 0.0)) raise(Err::DomainX, "log map needs x > 0");
      return std::log(x) / scale;
  }
  raise(Err::BadInput, "unknown map");
}

double VariableMap::mu() const {
  switch (kind) {
    case Kind::Sqrt: return 0.5;
    case Kind::Linear: return 1.0 / scale;
    case Kind::Log: return 1.0 / scale;
  }
  raise(Err::BadInput, "unknown map");
}

double VariableMap::s() const {
  switch (kind) {
    case Kind::Sqrt: return -0.5;
    case Kind::Linear: return 0.0;
    case Kind::Log: return -1.0;
  }
  raise(Err::BadInput, "unknown map");
}

double phi_factor(const ChfParams& p, const VariableMap& map, double x) {
  if (!(x > 0.0)) raise(Err::DomainX, "phi factor needs x > 0");
  return std::exp(0.5 * x) * std::pow(x, -0.5 * (p.c + map.s())) /
         std::sqrt(map.mu());
}

// --- dictionaries -------------------------------------------------------------

double ParamDictionary::cp(long long k) const {
  switch (pot.kind) {
    case PotentialKind::Oscillator1D: return 0.5;
    case PotentialKind::OscillatorN:
      return static_cast<double>(pot.ell) + 0.5 * pot.dim - 1.0;
    case PotentialKind::CoulombN:
      return 2.0 * static_cast<double>(pot.ell) + pot.dim - 2.0;
    case PotentialKind::Morse:
      return pot.lambda - 1.0 - 2.0 * static_cast<double>(k);
  }
  raise(Err::BadInput, "unknown potential kind");
}

double ParamDictionary::ap(long long k) const {
  switch (pot.kind) {
    case PotentialKind::Oscillator1D:
      return -(static_cast<double>(k) + 0.5);
    case PotentialKind::OscillatorN:
      return -(2.0 * static_cast<double>(k) + static_cast<double>(pot.ell) +
               0.5 * pot.dim);
    case PotentialKind::CoulombN:
      return -2.0 * (static_cast<double>(k) + static_cast<double>(pot.ell) +
                     0.5 * (pot.dim - 1.0));
    case PotentialKind::Morse:
      return -pot.lambda;
  }
  raise(Err::BadInput, "unknown potential kind");
}

double ParamDictionary::energy(long long k) const {
  switch (pot.kind) {
    case PotentialKind::Oscillator1D:
    case PotentialKind::OscillatorN:
      return -2.0 * ap(k);
    case PotentialKind::CoulombN:
      return energy_from_ap(ap(k));
    case PotentialKind::Morse:
      return energy_from_cp(cp(k));
  }
  raise(Err::BadInput, "unknown potential kind");
}

double ParamDictionary::energy_from_ap(double a) const {
  switch (pot.kind) {
    case PotentialKind::Oscillator1D:
    case PotentialKind::OscillatorN:
      return -2.0 * a;
    case PotentialKind::CoulombN:
      return -(2.0 / a) * (2.0 / a);
    case PotentialKind::Morse:
      raise(Err::BadInput, "Morse energies follow c', not a'");
  }
  raise(Err::BadInput, "unknown potential kind");
}

double ParamDictionary::energy_from_cp(double c) const {
  if (pot.kind != PotentialKind::Morse) {
    raise(Err::BadInput, "energy_from_cp is a Morse relation");
  }
  return -0.25 * pot.alpha * pot.alpha * c * c;
}

long long ParamDictionary::max_states() const {
  if (pot.kind != PotentialKind::Morse) return -1;
  if (pot.lambda <= 1.0 + kIntegerBand) return 0;
  // States need nu = lambda - 1 - 2k > 0.
  return static_cast<long long>(
      std::ceil(0.5 * (pot.lambda - 1.0) - kIntegerBand));
}

VariableMap ParamDictionary::map(long long k) const {
  switch (pot.kind) {
    case PotentialKind::Oscillator1D:
    case PotentialKind::OscillatorN:
      return {VariableMap::Kind::Sqrt, 1.0};
    case PotentialKind::CoulombN:
      return {VariableMap::Kind::Linear, 2.0 * std::sqrt(-energy(k))};
    case PotentialKind::Morse:
      return {VariableMap::Kind::Log, pot.alpha};
  }
  raise(Err::BadInput, "unknown potential kind");
}

ParamDictionary param_dictionary(const PotentialSpec& pot) {
  validate_spec(pot);
  return ParamDictionary{pot};
}

const char* branch_name(BranchSide b) {
  return b == BranchSide::plus ? "plus" : "minus";
}

// --- natural support ----------------------------------------------------------

namespace {

double envelope_log(double p, double x) { return p * std::log(x) - 0.5 * x; }

// Polynomial degree of the evaluable slot(s) of a bound-state element.
long long poly_degree(const KernelElement& e) {
  long long d = 0;
  if (e.alpha != 0.0 && is_nonpositive_integer(e.p.a)) {
    d = std::max(d, -llround_checked(e.p.a));
  }
  if (e.beta != 0.0 && is_nonpositive_integer(e.p.a - e.p.c + 1.0)) {
    d = std::max(d, -llround_checked(e.p.a - e.p.c + 1.0));
  }
  return d;
}

// x-range outside which |psi| has fallen ~1e-12 below its envelope peak.
// In x-space every bound state is (sum of powers) * polynomial * e^(-x/2).
std::pair<double, double> natural_x_range(const KernelElement& e, double s) {
  double p_origin = 1e300;
  double p_top = -1e300;
  if (e.alpha != 0.0) {
    const double pm = 0.5 * (e.p.c + s);
    p_origin = std::min(p_origin, pm);
    p_top = std::max(p_top, pm);
  }
  if (e.beta != 0.0) {
    const double pu = 0.5 * (2.0 - e.p.c + s);
    p_origin = std::min(p_origin, pu);
    p_top = std::max(p_top, pu);
  }
  const double p_tail = p_top + static_cast<double>(poly_degree(e));
  const double peak_log =
      p_tail > 0.0 ? envelope_log(p_tail, 2.0 * p_tail) : 0.0;
  const double target = peak_log - kSupportDrop;

  // Right cutoff: bisect the decreasing branch of p ln x - x/2.
  double lo = p_tail > 0.0 ? 2.0 * p_tail : 1e-6;
  double hi = std::max(4.0 * p_tail + 20.0, 20.0);
  while (envelope_log(p_tail, hi) > target) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (envelope_log(p_tail, mid) > target) lo = mid;
    else hi = mid;
  }
  const double x_hi = hi;

  // Left cutoff from the pure power behavior at the origin.
  const double x_lo = p_origin > 0.0 ? std::exp(target / p_origin) : 0.0;
  return {x_lo, x_hi};
}

void assign_domain(Wavefunction& w) {
  const auto [x_lo, x_hi] = natural_x_range(w.element, w.map.s());
  if (w.pot.kind == PotentialKind::Oscillator1D) {
    w.y_hi = w.map.y_of_x(x_hi);
    w.y_lo = -w.y_hi;
    return;
  }
  w.y_lo = w.map.y_of_x(x_lo);
  w.y_hi = w.map.y_of_x(x_hi);
}

KernelElement physical_element(const ChfParams& p) {
  // Prefer the polynomial M slot; fall back to the u slot when M sits on a
  // parameter pole (minus representations with integer c <= 0).
  if (is_nonpositive_integer(p.a) && !is_nonpositive_integer(p.c)) {
    return {p, 1.0, 0.0};
  }
  if (is_nonpositive_integer(p.a - p.c + 1.0) &&
      !is_nonpositive_integer(2.0 - p.c)) {
    return {p, 0.0, 1.0};
  }
  raise(Err::NotBoundState,
        "no square-integrable kernel element at a=" + std::to_string(p.a) +
            ", c=" + std::to_string(p.c));
}

}  // namespace

Wavefunction bound_state(const PotentialSpec& pot, long long k,
                         BranchSide branch) {
  validate_spec(pot);
  if (k < 0) raise(Err::NotBoundState, "state index must be >= 0");
  const ParamDictionary d = param_dictionary(pot);
  const long long cap = d.max_states();
  if (cap >= 0 && k >= cap) {
    raise(Err::NotBoundState,
          "this well holds " + std::to_string(cap) + " bound state(s)");
  }
  const double app = d.ap(k);
  const double cpp = d.cp(k);
  const double bcp = branch == BranchSide::plus ? cpp : -cpp;

  Wavefunction w;
  w.pot = pot;
  w.branch = branch;
  w.k = k;
  w.energy = d.energy(k);
  w.ap = app;
  w.cp = bcp;
  w.element = physical_element(lattice::unprimed(app, bcp));
  w.map = d.map(k);
  assign_domain(w);
  return w;
}

std::vector<double> spectrum(const PotentialSpec& pot, long long levels) {
  validate_spec(pot);
  if (levels < 1) raise(Err::BadInput, "levels must be >= 1");
  const ParamDictionary d = param_dictionary(pot);
  long long count = levels;
  if (d.max_states() >= 0) count = std::min(count, d.max_states());
  std::vector<double> es;
  es.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) es.push_back(d.energy(k));
  return es;
}

double Wavefunction::eval(double y) const {
  double sign = 1.0;
  double yy = y;
  if (pot.kind == PotentialKind::Oscillator1D) {
    // Full-line extension: the parity of the state equals the parity of k.
    if (y < 0.0) {
      yy = -y;
      if (k % 2 == 1) sign = -1.0;
    }
  } else if (pot.kind != PotentialKind::Morse && !(y > 0.0)) {
    raise(Err::DomainY, "radial coordinate must be > 0");
  }
  const double x = map.x_of_y(yy);
  const double a = element.p.a;
  const double c = element.p.c;
  const double sv = map.s();
  double out = 0.0;
  if (element.alpha != 0.0) {
    out += element.alpha * std::pow(x, 0.5 * (c + sv)) * kummer_m(a, c, x);
  }
  if (element.beta != 0.0) {
    // u = x^(1-c) M(a-c+1, 2-c; x) with the prefactor folded into the power;
    // valid at integer c where the guarded kummer_u2 refuses.
    out += element.beta * std::pow(x, 0.5 * (2.0 - c + sv)) *
           kummer_m(a - c + 1.0, 2.0 - c, x);
  }
  return sign * std::sqrt(map.mu()) * std::exp(-0.5 * x) * out;
}

std::optional<lattice::SectorClass> Wavefunction::lattice_class() const {
  const auto q = lattice::rationalize(ap, cp);
  if (!q) return std::nullopt;
  return lattice::classify(*q);
}

// --- residual / nodes / norm ---------------------------------------------------

ResidualReport schrodinger_residual(const std::function<double(double)>& psi,
                                    const PotentialSpec& pot, double energy,
                                    double y_lo, double y_hi, int n, double h,
                                    grid::Exec ex) {
  validate_spec(pot);
  if (!(y_hi > y_lo)) raise(Err::BadInput, "empty residual window");
  if (n < 8) raise(Err::BadInput, "residual grid too small");
  const double span = y_hi - y_lo;
  const double lo = y_lo + 0.02 * span;
  const double hi = y_hi - 0.02 * span;
  const auto ys = grid::linspace(lo, hi, n);
  const auto p0 = grid::map_grid(ys, psi, ex);
  const auto pp = grid::map_grid(ys, [&](double y) { return psi(y + h); }, ex);
  const auto pm = grid::map_grid(ys, [&](double y) { return psi(y - h); }, ex);
  const auto vv = grid::map_grid(
      ys, [&](double y) { return potential_value(pot, y); }, ex);

  std::vector<double> den(ys.size());
  grid::for_index(
      n,
      [&](int i) {
        const auto u = static_cast<std::size_t>(i);
        den[u] = std::fabs(energy * p0[u]) + std::fabs(vv[u] * p0[u]);
      },
      ex);
  const double eps = 0.05 * grid::max_abs(den);

  std::vector<double> res(ys.size());
  grid::for_index(
      n,
      [&](int i) {
        const auto u = static_cast<std::size_t>(i);
        const double dd = (pp[u] - 2.0 * p0[u] + pm[u]) / (h * h);
        res[u] = std::fabs(-dd + (vv[u] - energy) * p0[u]) / (den[u] + eps);
      },
      ex);

  ResidualReport r;
  r.max_residual = grid::max_abs(res);
  r.y_lo = lo;
  r.y_hi = hi;
  r.n = n;
  r.h = h;
  return r;
}

ResidualReport schrodinger_residual(const Wavefunction& w, int n, double h,
                                    grid::Exec ex) {
  return schrodinger_residual([&](double y) { return w.eval(y); }, w.pot,
                              w.energy, w.y_lo, w.y_hi, n, h, ex);
}

long long count_nodes(const std::function<double(double)>& psi, double y_lo,
                      double y_hi, int n, grid::Exec ex) {
  const auto ys = grid::linspace(y_lo, y_hi, n);
  const auto vals = grid::map_grid(ys, psi, ex);
  const double floor = 1e-8 * grid::max_abs(vals);
  return grid::count_sign_changes(vals, floor);
}

long long count_nodes(const Wavefunction& w, int n, grid::Exec ex) {
  return count_nodes([&](double y) { return w.eval(y); }, w.y_lo, w.y_hi, n,
                     ex);
}

double l2_norm(const std::function<double(double)>& psi, double y_lo,
               double y_hi, int n, grid::Exec ex) {
  const auto ys = grid::linspace(y_lo, y_hi, n);
  const auto vals = grid::map_grid(ys, psi, ex);
  std::vector<double> sq(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) sq[i] = vals[i] * vals[i];
  return std::sqrt(grid::trapezoid(ys, sq));
}

// --- ladder --------------------------------------------------------------------

namespace {

struct Resolved {
  PotentialSpec pot;
  BranchSide branch = BranchSide::plus;
  long long k = 0;
};

std::optional<long long> as_index(double v) {
  if (!near_integer(v)) return std::nullopt;
  const long long n = llround_checked(v);
  if (n < 0) return std::nullopt;
  return n;
}

std::optional<Resolved> resolve_labels(const PotentialSpec& src, double tap,
                                       double tcp) {
  Resolved r;
  r.pot = src;
  switch (src.kind) {
    case PotentialKind::Oscillator1D: {
      if (near_integer(tcp - 0.5) && llround_checked(tcp - 0.5) == 0) {
        r.branch = BranchSide::plus;
      } else if (near_integer(tcp + 0.5) && llround_checked(tcp + 0.5) == 0) {
        r.branch = BranchSide::minus;
      } else {
        return std::nullopt;
      }
      const auto k = as_index(-tap - 0.5);
      if (!k) return std::nullopt;
      r.k = *k;
      return r;
    }
    case PotentialKind::OscillatorN: {
      r.branch = tcp >= 0.0 ? BranchSide::plus : BranchSide::minus;
      const double cpp = std::fabs(tcp);
      const auto ell = as_index(cpp - 0.5 * src.dim + 1.0);
      if (!ell) return std::nullopt;
      const auto k = as_index(0.5 * (-tap - static_cast<double>(*ell) -
                                     0.5 * src.dim));
      if (!k) return std::nullopt;
      r.pot.ell = *ell;
      r.k = *k;
      return r;
    }
    case PotentialKind::CoulombN: {
      r.branch = tcp >= 0.0 ? BranchSide::plus : BranchSide::minus;
      const double cpp = std::fabs(tcp);
      const auto ell = as_index(0.5 * (cpp + 2.0 - src.dim));
      if (!ell) return std::nullopt;
      const double npr = -0.5 * tap;
      const auto k = as_index(npr - static_cast<double>(*ell) -
                              0.5 * (src.dim - 1.0));
      if (!k) return std::nullopt;
      r.pot.ell = *ell;
      r.k = *k;
      return r;
    }
    case PotentialKind::Morse: {
      r.branch = tcp >= 0.0 ? BranchSide::plus : BranchSide::minus;
      const double lambda = -tap;
      const double nu = std::fabs(tcp);
      if (!(nu > kIntegerBand) || !(lambda > 1.0)) return std::nullopt;
      const auto k = as_index(0.5 * (lambda - 1.0 - nu));
      if (!k) return std::nullopt;
      r.pot.lambda = lambda;
      r.k = *k;
      return r;
    }
  }
  return std::nullopt;
}

std::pair<double, double> induced_primed_real(ops::OpKind op, double ap,
                                              double cp) {
  using ops::OpKind;
  switch (op) {
    case OpKind::A1: return {ap - 1.0, cp + 1.0};
    case OpKind::B1: return {ap + 1.0, cp - 1.0};
    case OpKind::A2: return {ap - 1.0, cp - 1.0};
    case OpKind::B2: return {ap + 1.0, cp + 1.0};
    case OpKind::A3: return {ap - 1.0, -cp - 1.0};
    case OpKind::B3: return {ap + 1.0, -cp - 1.0};
    case OpKind::A4: return {ap - 1.0, -cp + 1.0};
    case OpKind::B4: return {ap + 1.0, -cp + 1.0};
    default:
      raise(Err::BadInput, "ladder steps use the A/B operators");
  }
}

}  // namespace

Wavefunction ladder_on_wavefunction(ops::OpKind op, const Wavefunction& w) {
  const auto [tap, tcp] = induced_primed_real(op, w.ap, w.cp);
  const KernelElement img = ops::apply_symbolic(op, w.element);
  const double in_scale =
      std::fabs(w.element.alpha) + std::fabs(w.element.beta);
  if (std::fabs(img.alpha) + std::fabs(img.beta) <= 1e-12 * in_scale) {
    raise(Err::Annihilated, std::string(ops::op_name(op)) +
                                " annihilates this state (a', c') = (" +
                                std::to_string(w.ap) + ", " +
                                std::to_string(w.cp) + ")");
  }
  const auto labels = resolve_labels(w.pot, tap, tcp);
  if (!labels) {
    raise(Err::NotBoundState,
          std::string(ops::op_name(op)) +
              " leaves the bound-state family at (a', c') = (" +
              std::to_string(tap) + ", " + std::to_string(tcp) + ")");
  }
  Wavefunction t = bound_state(labels->pot, labels->k, labels->branch);
  // Keep the operator's scale: the image element, not the canonical one.
  t.element = img;
  assign_domain(t);
  return t;
}

// --- cross maps ------------------------------------------------------------------

CrossMapped cross_map_oscillator_morse(const Wavefunction& osc, double alpha) {
  if (osc.pot.kind != PotentialKind::OscillatorN || osc.pot.dim != 2) {
    raise(Err::LabelConstraint,
          "source must be a planar (N=2) oscillator state");
  }
  if (!(alpha > 0.0)) raise(Err::BadInput, "Morse alpha must be > 0");
  const long long ell = osc.pot.ell;
  const long long n = 2 * osc.k + ell + 1;
  if (ell < 1) {
    raise(Err::LabelConstraint,
          "the Morse image has nu = ell; ell >= 1 required");
  }
  CrossMapped r;
  r.pot = morse(alpha, static_cast<double>(n));
  r.energy = -0.25 * alpha * alpha * static_cast<double>(ell * ell);
  r.expected_nodes = osc.k;
  r.n_src = n;
  r.ell_src = ell;
  r.y_lo = 2.0 * std::log(osc.y_lo) / alpha;
  r.y_hi = 2.0 * std::log(osc.y_hi) / alpha;
  const Wavefunction src = osc;
  r.psi = [src, alpha](double y) {
    return std::exp(-0.25 * alpha * y) * src.eval(std::exp(0.5 * alpha * y));
  };
  return r;
}

CrossMapped cross_map_oscillator_coulomb(const Wavefunction& osc) {
  if (osc.pot.kind != PotentialKind::OscillatorN || osc.pot.dim != 2) {
    raise(Err::LabelConstraint,
          "source must be a planar (N=2) oscillator state");
  }
  const long long ell = osc.pot.ell;
  const long long n = 2 * osc.k + ell + 1;
  if (n % 2 != 1) {
    raise(Err::LabelConstraint,
          "Coulomb images exist for odd n (even ell) only");
  }
  CrossMapped r;
  r.pot = coulomb_radial(2, ell / 2);
  r.energy = -4.0 / static_cast<double>(n * n);
  r.expected_nodes = osc.k;
  r.n_src = n;
  r.ell_src = ell;
  r.y_lo = static_cast<double>(n) * osc.y_lo * osc.y_lo / 4.0;
  r.y_hi = static_cast<double>(n) * osc.y_hi * osc.y_hi / 4.0;
  const Wavefunction src = osc;
  const double nd = static_cast<double>(n);
  r.psi = [src, nd](double y) {
    return std::pow(y, 0.25) * src.eval(2.0 * std::sqrt(y / nd));
  };
  return r;
}

}  // namespace chf::qm
