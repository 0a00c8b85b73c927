#include "chf/intertwiners.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace chf::ops {

namespace {

constexpr double kDenomFloor = 1e-12;

OpKind a_of(int i) {
  switch (i) {
    case 1: return OpKind::A1;
    case 2: return OpKind::A2;
    case 3: return OpKind::A3;
    case 4: return OpKind::A4;
  }
  raise(Err::BadInput, "factorization index must be 1..4");
}

OpKind b_of(int i) {
  switch (i) {
    case 1: return OpKind::B1;
    case 2: return OpKind::B2;
    case 3: return OpKind::B3;
    case 4: return OpKind::B4;
  }
  raise(Err::BadInput, "factorization index must be 1..4");
}

double require_positive_x(double x, const char* who) {
  if (!(x > 0.0)) {
    raise(Err::DomainX, std::string(who) + " carries a non-integer power of x; x > 0 required");
  }
  return x;
}

}  // namespace

const char* op_name(OpKind k) {
  switch (k) {
    case OpKind::Q: return "Q";
    case OpKind::A1: return "A1";
    case OpKind::B1: return "B1";
    case OpKind::A2: return "A2";
    case OpKind::B2: return "B2";
    case OpKind::A3: return "A3";
    case OpKind::B3: return "B3";
    case OpKind::A4: return "A4";
    case OpKind::B4: return "B4";
    case OpKind::V: return "V";
    case OpKind::W: return "W";
  }
  return "?";
}

std::optional<OpKind> op_from_name(std::string_view name) {
  for (OpKind k : kAllOps) {
    if (name == op_name(k)) return k;
  }
  return std::nullopt;
}

ChfParams induced_params(OpKind k, const ChfParams& p) {
  const double a = p.a, c = p.c;
  switch (k) {
    case OpKind::Q: return {a - c + 1.0, 2.0 - c};
    case OpKind::A1: return {a, c + 1.0};
    case OpKind::B1: return {a, c - 1.0};
    case OpKind::A2: return {a - 1.0, c - 1.0};
    case OpKind::B2: return {a + 1.0, c + 1.0};
    case OpKind::A3: return {a - c, 1.0 - c};
    case OpKind::B3: return {a - c + 1.0, 1.0 - c};
    case OpKind::A4: return {a - c + 1.0, 3.0 - c};
    case OpKind::B4: return {a - c + 2.0, 3.0 - c};
    case OpKind::V: return {c - a, c};
    case OpKind::W: return {1.0 - a, 2.0 - c};
  }
  raise(Err::BadInput, "unknown operator");
}

BasisAction basis_action(OpKind k, const ChfParams& p) {
  const double a = p.a, c = p.c;
  BasisAction act;
  act.target = induced_params(k, p);
  switch (k) {
    case OpKind::Q:
      act.swaps_basis = true;
      break;
    case OpKind::A1:
      act.coeff_from_m = (a - c) / c;
      act.denom_m = c;
      act.coeff_from_u = 1.0 - c;
      break;
    case OpKind::B1:
      act.coeff_from_m = c - 1.0;
      act.coeff_from_u = (a - c + 1.0) / (2.0 - c);
      act.denom_u = 2.0 - c;
      break;
    case OpKind::A2:
      act.coeff_from_m = c - 1.0;
      act.coeff_from_u = (a - 1.0) / (2.0 - c);
      act.denom_u = 2.0 - c;
      break;
    case OpKind::B2:
      act.coeff_from_m = a / c;
      act.denom_m = c;
      act.coeff_from_u = 1.0 - c;
      break;
    case OpKind::A3:
      act.swaps_basis = true;
      act.coeff_from_m = (a - c) / c;
      act.denom_m = c;
      act.coeff_from_u = 1.0 - c;
      break;
    case OpKind::B3:
      act.swaps_basis = true;
      act.coeff_from_m = a / c;
      act.denom_m = c;
      act.coeff_from_u = 1.0 - c;
      break;
    case OpKind::A4:
      act.swaps_basis = true;
      act.coeff_from_m = c - 1.0;
      act.coeff_from_u = (a - 1.0) / (2.0 - c);
      act.denom_u = 2.0 - c;
      break;
    case OpKind::B4:
      act.swaps_basis = true;
      act.coeff_from_m = c - 1.0;
      act.coeff_from_u = (a - c + 1.0) / (2.0 - c);
      act.denom_u = 2.0 - c;
      break;
    case OpKind::V:
      act.phase_on_u = true;
      break;
    case OpKind::W:
      act.swaps_basis = true;
      act.phase_on_u = true;
      break;
  }
  return act;
}

KernelElement apply_symbolic(OpKind k, const KernelElement& f) {
  const BasisAction act = basis_action(k, f.p);
  double image_of_m = 0.0;
  double image_of_u = 0.0;
  if (f.alpha != 0.0) {
    if (std::fabs(act.denom_m) < kDenomFloor) {
      raise(Err::CoefficientPole, std::string(op_name(k)) +
                                      " coefficient denominator c vanishes");
    }
    image_of_m = act.coeff_from_m * f.alpha;
  }
  if (f.beta != 0.0) {
    if (std::fabs(act.denom_u) < kDenomFloor) {
      raise(Err::CoefficientPole, std::string(op_name(k)) +
                                      " coefficient denominator 2-c vanishes");
    }
    double phase = 1.0;
    if (act.phase_on_u) {
      const double e = 1.0 - f.p.c;
      if (!near_integer(e)) {
        raise(Err::PhaseNotReal,
              std::string(op_name(k)) + " phase (-1)^(1-c) not real at c=" +
                  std::to_string(f.p.c));
      }
      phase = (llround_checked(e) % 2 == 0) ? 1.0 : -1.0;
    }
    image_of_u = phase * act.coeff_from_u * f.beta;
  }
  KernelElement out{act.target, 0.0, 0.0};
  if (act.swaps_basis) {
    out.beta = image_of_m;
    out.alpha = image_of_u;
  } else {
    out.alpha = image_of_m;
    out.beta = image_of_u;
  }
  return out;
}

double apply_numeric(OpKind k, const KernelElement& f, double x,
                     const SeriesConfig& cfg) {
  const double c = f.p.c;
  const auto value = [&] { return eval_kernel(f, x, cfg); };
  const auto deriv = [&] { return eval_derivative(f, x, 1, cfg); };
  switch (k) {
    case OpKind::Q:
      require_positive_x(x, "Q");
      return std::pow(x, c - 1.0) * value();
    case OpKind::A1:
      return deriv() - value();
    case OpKind::B1:
      return x * deriv() + (c - 1.0) * value();
    case OpKind::A2:
      return x * (deriv() - value()) + (c - 1.0) * value();
    case OpKind::B2:
      return deriv();
    case OpKind::A3:
      require_positive_x(x, "A3");
      return std::pow(x, c) * (deriv() - value());
    case OpKind::B3:
      require_positive_x(x, "B3");
      return std::pow(x, c) * deriv();
    case OpKind::A4:
      require_positive_x(x, "A4");
      return std::pow(x, c - 2.0) *
             (x * (deriv() - value()) + (c - 1.0) * value());
    case OpKind::B4:
      require_positive_x(x, "B4");
      return std::pow(x, c - 2.0) * (x * deriv() + (c - 1.0) * value());
    case OpKind::V:
      if (f.beta != 0.0) {
        raise(Err::ReflectionDomain,
              "V reflects the argument; the second solution has no real "
              "continuation to x < 0");
      }
      return std::exp(x) * eval_kernel(f, -x, cfg);
    case OpKind::W:
      if (f.beta != 0.0) {
        raise(Err::ReflectionDomain,
              "W reflects the argument; the second solution has no real "
              "continuation to x < 0");
      }
      require_positive_x(x, "W");
      return std::pow(x, c - 1.0) * std::exp(x) * eval_kernel(f, -x, cfg);
  }
  raise(Err::BadInput, "unknown operator");
}

double check_intertwining(OpKind k, const ChfParams& p,
                          const std::vector<double>& xs,
                          const SeriesConfig& cfg) {
  double worst = 0.0;
  const KernelElement branches[2] = {{p, 1.0, 0.0}, {p, 0.0, 1.0}};
  for (const KernelElement& f : branches) {
    if (f.beta != 0.0 && (k == OpKind::V || k == OpKind::W)) continue;
    const KernelElement sym = apply_symbolic(k, f);
    for (double x : xs) {
      const double lhs = apply_numeric(k, f, x, cfg);
      const double rhs = eval_kernel(sym, x, cfg);
      const double dev =
          std::fabs(lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs) + 1e-30);
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

double factorization_constant(int i, const ChfParams& p) {
  switch (i) {
    case 1: return p.a - p.c;
    case 2: return p.a - 1.0;
    case 3: return p.a - p.c;
    case 4: return p.a - 1.0;
  }
  raise(Err::BadInput, "factorization index must be 1..4");
}

double check_factorization(int i, FactForm form, const KernelElement& f,
                           double x, const SeriesConfig& cfg) {
  const OpKind A = a_of(i);
  const OpKind B = b_of(i);
  double lhs;
  double q;
  if (form == FactForm::BA) {
    // B^i A^i f = (L + q^i(a,c)) f = q^i(a,c) f on the kernel.
    lhs = apply_numeric(B, apply_symbolic(A, f), x, cfg);
    q = factorization_constant(i, f.p);
  } else {
    lhs = apply_numeric(A, apply_symbolic(B, f), x, cfg);
    q = factorization_constant(i, induced_params(B, f.p));
  }
  const double rhs = q * eval_kernel(f, x, cfg);
  return std::fabs(lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs) + 1e-30);
}

// --- exact power-sum probe --------------------------------------------------

namespace {

struct PowerTerm {
  double coeff;
  double power;
};

struct PowerSum {
  std::vector<PowerTerm> t;

  PowerSum deriv() const {
    PowerSum out;
    for (const auto& pt : t) {
      if (pt.power != 0.0) out.t.push_back({pt.coeff * pt.power, pt.power - 1.0});
    }
    return out;
  }
  PowerSum mul_power(double s) const {
    PowerSum out;
    for (const auto& pt : t) out.t.push_back({pt.coeff, pt.power + s});
    return out;
  }
  PowerSum scaled(double s) const {
    PowerSum out;
    for (const auto& pt : t) out.t.push_back({pt.coeff * s, pt.power});
    return out;
  }
  PowerSum plus(const PowerSum& o) const {
    PowerSum out = *this;
    out.t.insert(out.t.end(), o.t.begin(), o.t.end());
    return out;
  }
  // Merge terms whose powers agree to 1e-9 and drop zero coefficients.
  void canonicalize() {
    std::vector<PowerTerm> merged;
    for (const auto& pt : t) {
      bool hit = false;
      for (auto& m : merged) {
        if (std::fabs(m.power - pt.power) < 1e-9) {
          m.coeff += pt.coeff;
          hit = true;
          break;
        }
      }
      if (!hit) merged.push_back(pt);
    }
    t.clear();
    for (const auto& m : merged) {
      if (std::fabs(m.coeff) > 0.0) t.push_back(m);
    }
  }
};

PowerSum apply_op_power_sum(OpKind k, const ChfParams& p, const PowerSum& f) {
  const double c = p.c;
  switch (k) {
    case OpKind::Q: return f.mul_power(c - 1.0);
    case OpKind::A1: return f.deriv().plus(f.scaled(-1.0));
    case OpKind::B1: return f.deriv().mul_power(1.0).plus(f.scaled(c - 1.0));
    case OpKind::A2:
      return f.deriv().mul_power(1.0).plus(f.mul_power(1.0).scaled(-1.0)).plus(
          f.scaled(c - 1.0));
    case OpKind::B2: return f.deriv();
    case OpKind::A3:
      return f.deriv().plus(f.scaled(-1.0)).mul_power(c);
    case OpKind::B3: return f.deriv().mul_power(c);
    case OpKind::A4:
      return f.deriv()
          .mul_power(1.0)
          .plus(f.mul_power(1.0).scaled(-1.0))
          .plus(f.scaled(c - 1.0))
          .mul_power(c - 2.0);
    case OpKind::B4:
      return f.deriv().mul_power(1.0).plus(f.scaled(c - 1.0)).mul_power(c - 2.0);
    default:
      raise(Err::BadInput, "probe supports the power-preserving operators only");
  }
}

}  // namespace

double factorization_probe_deviation(int i, FactForm form,
                                     const ChfParams& p) {
  const OpKind A = a_of(i);
  const OpKind B = b_of(i);
  PowerSum probe;
  probe.t.push_back({1.0, 2.0});

  PowerSum got;
  if (form == FactForm::BA) {
    const PowerSum inner = apply_op_power_sum(A, p, probe);
    got = apply_op_power_sum(B, induced_params(A, p), inner)
              .plus(probe.scaled(-factorization_constant(i, p)));
  } else {
    const PowerSum inner = apply_op_power_sum(B, p, probe);
    got = apply_op_power_sum(A, induced_params(B, p), inner)
              .plus(probe.scaled(
                  -factorization_constant(i, induced_params(B, p))));
  }
  got.canonicalize();

  // L x^2 = x (x^2)'' + (c - x)(x^2)' - a x^2 = (2 + 2c) x - (2 + a) x^2.
  PowerSum want;
  want.t.push_back({2.0 + 2.0 * p.c, 1.0});
  want.t.push_back({-(2.0 + p.a), 2.0});
  want.canonicalize();

  double worst = 0.0;
  auto coeff_at = [](const PowerSum& s, double power) {
    for (const auto& pt : s.t) {
      if (std::fabs(pt.power - power) < 1e-9) return pt.coeff;
    }
    return 0.0;
  };
  for (const auto& pt : want.t) {
    const double dev = std::fabs(coeff_at(got, pt.power) - pt.coeff) /
                       (std::fabs(pt.coeff) + 1.0);
    if (dev > worst) worst = dev;
  }
  for (const auto& pt : got.t) {
    const double dev = std::fabs(pt.coeff - coeff_at(want, pt.power)) /
                       (std::fabs(coeff_at(want, pt.power)) + 1.0);
    if (dev > worst) worst = dev;
  }
  return worst;
}

const char* composition_name(CompositionRelation r) {
  switch (r) {
    case CompositionRelation::W_QV: return "W=QV";
    case CompositionRelation::A2_QA1Q: return "A2=QA1Q";
    case CompositionRelation::A3_QA1: return "A3=QA1";
    case CompositionRelation::A4_QA2: return "A4=QA2";
    case CompositionRelation::B2_QB1Q: return "B2=QB1Q";
    case CompositionRelation::B3_QB2: return "B3=QB2";
    case CompositionRelation::B4_QB1: return "B4=QB1";
    case CompositionRelation::QQ_IDENT: return "QQ=1";
  }
  return "?";
}

double check_composition(CompositionRelation r, const KernelElement& f,
                         double x, const SeriesConfig& cfg) {
  // Words are stored in application order (rightmost operator first); the
  // parameters thread through each step.
  std::vector<OpKind> word;
  KernelElement lhs_elem = f;
  bool lhs_is_identity = false;
  switch (r) {
    case CompositionRelation::W_QV:
      lhs_elem = apply_symbolic(OpKind::W, f);
      word = {OpKind::V, OpKind::Q};
      break;
    case CompositionRelation::A2_QA1Q:
      lhs_elem = apply_symbolic(OpKind::A2, f);
      word = {OpKind::Q, OpKind::A1, OpKind::Q};
      break;
    case CompositionRelation::A3_QA1:
      lhs_elem = apply_symbolic(OpKind::A3, f);
      word = {OpKind::A1, OpKind::Q};
      break;
    case CompositionRelation::A4_QA2:
      lhs_elem = apply_symbolic(OpKind::A4, f);
      word = {OpKind::A2, OpKind::Q};
      break;
    case CompositionRelation::B2_QB1Q:
      lhs_elem = apply_symbolic(OpKind::B2, f);
      word = {OpKind::Q, OpKind::B1, OpKind::Q};
      break;
    case CompositionRelation::B3_QB2:
      lhs_elem = apply_symbolic(OpKind::B3, f);
      word = {OpKind::B2, OpKind::Q};
      break;
    case CompositionRelation::B4_QB1:
      lhs_elem = apply_symbolic(OpKind::B4, f);
      word = {OpKind::B1, OpKind::Q};
      break;
    case CompositionRelation::QQ_IDENT:
      lhs_is_identity = true;
      word = {OpKind::Q, OpKind::Q};
      break;
  }
  KernelElement rhs_elem = f;
  for (OpKind k : word) rhs_elem = apply_symbolic(k, rhs_elem);

  const double lhs =
      lhs_is_identity ? eval_kernel(f, x, cfg) : eval_kernel(lhs_elem, x, cfg);
  const double rhs = eval_kernel(rhs_elem, x, cfg);
  return std::fabs(lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs) + 1e-30);
}

}  // namespace chf::ops
