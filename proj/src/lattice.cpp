#include "chf/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace chf {

// --- Rational ---------------------------------------------------------------

Rational Rational::of(long long n, long long d) {
  if (d == 0) raise(Err::BadInput, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational{n, d};
}

std::optional<Rational> Rational::parse(std::string_view s) {
  auto parse_ll = [](std::string_view t, long long* out) -> bool {
    if (t.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
      neg = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) return false;
    long long v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
      v = v * 10 + (t[i] - '0');
    }
    *out = neg ? -v : v;
    return true;
  };
  const auto slash = s.find('/');
  long long n = 0, d = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(s, &n)) return std::nullopt;
  } else {
    if (!parse_ll(s.substr(0, slash), &n)) return std::nullopt;
    if (!parse_ll(s.substr(slash + 1), &d)) return std::nullopt;
    if (d == 0) return std::nullopt;
  }
  return Rational::of(n, d);
}

Rational Rational::operator+(const Rational& o) const {
  return of(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return of(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return of(num * o.num, den * o.den);
}
Rational Rational::operator-() const { return Rational{-num, den}; }
bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace chf

namespace chf::lattice {

namespace {

const Rational kZero = rat(0);
const Rational kOne = rat(1);
const Rational kHalf = rat(1, 2);

void gate_check(const PrimedParams& q) {
  if (q.ap.den > 2 || q.cp.den > 2) {
    raise(Err::BadInput,
          "exactness gate: lattice coordinates must have denominator <= 2, "
          "got (" + q.ap.str() + ", " + q.cp.str() + ")");
  }
}

bool is_point(const PrimedParams& q, long long ap, long long cp) {
  return q.ap == rat(ap) && q.cp == rat(cp);
}

// Integer quotient of (r / 2) if exact and >= 0.
std::optional<long long> half_count(const Rational& r) {
  if (r.den != 1) return std::nullopt;
  if (r.num < 0 || r.num % 2 != 0) return std::nullopt;
  return r.num / 2;
}

double ipow(double base, long long e) {
  double v = 1.0;
  for (long long i = 0; i < e; ++i) v *= base;
  return v;
}

}  // namespace

PrimedParams to_primed(const Rational& a, const Rational& c) {
  return {a * rat(2) - c, c - kOne};
}

std::pair<Rational, Rational> from_primed(const PrimedParams& q) {
  return {(q.ap + q.cp + kOne) * kHalf, q.cp + kOne};
}

std::optional<PrimedParams> rationalize(double ap, double cp) {
  const double a2 = 2.0 * ap;
  const double c2 = 2.0 * cp;
  if (!near_integer(a2, 2.0 * kIntegerBand) ||
      !near_integer(c2, 2.0 * kIntegerBand)) {
    return std::nullopt;
  }
  return PrimedParams{rat(llround_checked(a2), 2), rat(llround_checked(c2), 2)};
}

PrimedParams induced_primed(ops::OpKind k, const PrimedParams& q) {
  using ops::OpKind;
  const Rational a = q.ap, c = q.cp;
  switch (k) {
    case OpKind::Q: return {a, -c};
    case OpKind::V: return {-a, c};
    case OpKind::W: return {-a, -c};
    case OpKind::A1: return {a - kOne, c + kOne};
    case OpKind::B1: return {a + kOne, c - kOne};
    case OpKind::A2: return {a - kOne, c - kOne};
    case OpKind::B2: return {a + kOne, c + kOne};
    case OpKind::A3: return {a - kOne, -c - kOne};
    case OpKind::B3: return {a + kOne, -c - kOne};
    case OpKind::A4: return {a - kOne, -c + kOne};
    case OpKind::B4: return {a + kOne, -c + kOne};
  }
  raise(Err::BadInput, "unknown operator");
}

AnnihilationLine annihilation_line(ops::OpKind k) {
  using ops::OpKind;
  switch (k) {
    case OpKind::A1:
    case OpKind::A3: return {1, -1};
    case OpKind::A2:
    case OpKind::A4: return {-1, 1};
    case OpKind::B1:
    case OpKind::B4: return {1, 1};
    case OpKind::B2:
    case OpKind::B3: return {-1, -1};
    default:
      raise(Err::BadInput,
            std::string(ops::op_name(k)) + " has no annihilation line");
  }
}

bool on_annihilation_line(ops::OpKind k, const PrimedParams& q) {
  using ops::OpKind;
  if (k == OpKind::Q || k == OpKind::V || k == OpKind::W) return false;
  const AnnihilationLine line = annihilation_line(k);
  return q.cp == q.ap * rat(line.slope) + rat(line.intercept);
}

const char* sector_variant_name(SectorVariant v) {
  switch (v) {
    case SectorVariant::LIS_upper: return "LIS_upper";
    case SectorVariant::LIS_lower: return "LIS_lower";
    case SectorVariant::RIS_upper: return "RIS_upper";
    case SectorVariant::RIS_lower: return "RIS_lower";
    case SectorVariant::InvLineMinusHalf_left: return "InvLineMinusHalf_left";
    case SectorVariant::InvLineMinusHalf_right: return "InvLineMinusHalf_right";
    case SectorVariant::InvLinePlusHalf: return "InvLinePlusHalf";
    case SectorVariant::CriticalPoint: return "CriticalPoint";
    case SectorVariant::Generic: return "Generic";
  }
  return "?";
}

SectorClass classify(const PrimedParams& q) {
  gate_check(q);
  SectorClass out;

  if (is_point(q, -1, 0) || is_point(q, 1, 0) || is_point(q, 0, 1) ||
      is_point(q, 0, -1)) {
    out.variant = SectorVariant::CriticalPoint;
    // The two sector corners carry closed-form functions; flag them.
    out.on_boundary = is_point(q, -1, 0) || is_point(q, 1, 0);
    return out;
  }

  // Left sector: (-1-m-n, m-n) with m, n >= 0 counting the two ladder steps
  // away from the corner (-1, 0).
  {
    const auto m = half_count(-kOne - q.ap + q.cp);
    const auto n = half_count(-kOne - q.ap - q.cp);
    if (m && n) {
      out.variant = kZero < q.cp ? SectorVariant::LIS_upper
                                 : SectorVariant::LIS_lower;
      out.on_spine = q.cp == kZero;
      if (out.on_spine) out.variant = SectorVariant::LIS_upper;
      out.indices = {{*m, *n}};
      out.on_boundary = *m == 0 || *n == 0;
      return out;
    }
  }
  // Right sector: (1+m+n, m-n) grown from (1, 0).
  {
    const auto m = half_count(q.ap - kOne + q.cp);
    const auto n = half_count(q.ap - kOne - q.cp);
    if (m && n) {
      out.variant = kZero < q.cp ? SectorVariant::RIS_upper
                                 : SectorVariant::RIS_lower;
      out.on_spine = q.cp == kZero;
      if (out.on_spine) out.variant = SectorVariant::RIS_upper;
      out.indices = {{*m, *n}};
      out.on_boundary = *m == 0 || *n == 0;
      return out;
    }
  }
  // Invariant-line lattices: half-odd-integer a' on c' = -1/2 (step pair
  // A3/B3) or c' = +1/2 (A4/B4).  Integer a' on these lines is not reachable
  // from the seeds and stays Generic.
  if (q.ap.den == 2) {
    if (q.cp == -kHalf) {
      if (q.ap < kZero) {
        const long long s = (-q.ap.num - 1) / 2;  // ap = -1/2 - s
        out.variant = SectorVariant::InvLineMinusHalf_left;
        out.indices = {{0, s}};
      } else {
        const long long s = (q.ap.num - 1) / 2;  // ap = 1/2 + s
        out.variant = SectorVariant::InvLineMinusHalf_right;
        out.indices = {{s, 0}};
      }
      return out;
    }
    if (q.cp == kHalf) {
      out.variant = SectorVariant::InvLinePlusHalf;
      if (q.ap < kZero) {
        out.indices = {{0, (-q.ap.num - 1) / 2}};
      } else {
        out.indices = {{(q.ap.num - 1) / 2, 0}};
      }
      return out;
    }
  }
  out.variant = SectorVariant::Generic;
  return out;
}

Orbit orbit(ops::OpKind k, const PrimedParams& start, int k_steps) {
  gate_check(start);
  if (k_steps < 0) raise(Err::BadInput, "orbit step count must be >= 0");
  Orbit o;
  o.points.push_back(start);
  PrimedParams cur = start;
  for (int i = 0; i < k_steps; ++i) {
    cur = induced_primed(k, cur);
    o.points.push_back(cur);
    // Only points produced by a step count as annihilation hits; a start
    // point already on the line does not stop the orbit.
    if (on_annihilation_line(k, cur)) {
      o.stopped_on_annihilation = true;
      break;
    }
  }
  return o;
}

double SectorFunction::eval(double x) const {
  switch (kind) {
    case SectorFormKind::ConstSign: return index % 2 == 0 ? 1.0 : -1.0;
    case SectorFormKind::MonomialNeg: return ipow(-x, index);
    case SectorFormKind::Exp: return std::exp(x);
    case SectorFormKind::MonomialExp: return ipow(x, index) * std::exp(x);
  }
  raise(Err::BadInput, "unknown sector form");
}

double SectorFunction::deriv(double x) const {
  switch (kind) {
    case SectorFormKind::ConstSign: return 0.0;
    case SectorFormKind::MonomialNeg:
      return index == 0 ? 0.0 : -static_cast<double>(index) * ipow(-x, index - 1);
    case SectorFormKind::Exp: return std::exp(x);
    case SectorFormKind::MonomialExp:
      return (static_cast<double>(index) * ipow(x, index - 1) + ipow(x, index)) *
             std::exp(x);
  }
  raise(Err::BadInput, "unknown sector form");
}

KernelElement SectorFunction::bridge() const {
  const auto [a, c] = from_primed(at);
  KernelElement e{{a.to_double(), c.to_double()}, 0.0, 0.0};
  const double sign = index % 2 == 0 ? 1.0 : -1.0;
  switch (kind) {
    case SectorFormKind::ConstSign: e.alpha = sign; break;
    case SectorFormKind::MonomialNeg: e.beta = sign; break;
    case SectorFormKind::Exp: e.alpha = 1.0; break;
    case SectorFormKind::MonomialExp: e.beta = 1.0; break;
  }
  return e;
}

ops::OpKind SectorFunction::annihilator() const {
  switch (kind) {
    case SectorFormKind::ConstSign: return ops::OpKind::B2;
    case SectorFormKind::MonomialNeg: return ops::OpKind::B1;
    case SectorFormKind::Exp: return ops::OpKind::A1;
    case SectorFormKind::MonomialExp: return ops::OpKind::A2;
  }
  raise(Err::BadInput, "unknown sector form");
}

std::string SectorFunction::name() const {
  switch (kind) {
    case SectorFormKind::ConstSign:
      return index % 2 == 0 ? "+1" : "-1";
    case SectorFormKind::MonomialNeg:
      return "(-x)^" + std::to_string(index);
    case SectorFormKind::Exp:
      return "exp(x)";
    case SectorFormKind::MonomialExp:
      return "x^" + std::to_string(index) + " exp(x)";
  }
  return "?";
}

SectorFunction sector_function(const PrimedParams& q) {
  const SectorClass cls = classify(q);
  SectorFunction f;
  f.at = q;
  if (cls.variant == SectorVariant::CriticalPoint) {
    if (is_point(q, -1, 0)) {
      f.kind = SectorFormKind::ConstSign;
      f.index = 0;
      return f;
    }
    if (is_point(q, 1, 0)) {
      f.kind = SectorFormKind::Exp;
      f.index = 0;
      return f;
    }
    raise(Err::NotInSector, "no closed form at (" + q.ap.str() + ", " +
                                q.cp.str() + ")");
  }
  if (!cls.indices || !cls.on_boundary ||
      (cls.variant != SectorVariant::LIS_upper &&
       cls.variant != SectorVariant::LIS_lower &&
       cls.variant != SectorVariant::RIS_upper &&
       cls.variant != SectorVariant::RIS_lower)) {
    raise(Err::NotInSector,
          "closed forms live on the sector boundaries; (" + q.ap.str() + ", " +
              q.cp.str() + ") is not one");
  }
  const auto [m, n] = *cls.indices;
  const bool left = cls.variant == SectorVariant::LIS_upper ||
                    cls.variant == SectorVariant::LIS_lower;
  if (left) {
    if (n == 0) {
      f.kind = SectorFormKind::ConstSign;
      f.index = m;
    } else {
      f.kind = SectorFormKind::MonomialNeg;
      f.index = n;
    }
  } else {
    if (n == 0) {
      f.kind = SectorFormKind::Exp;
      f.index = 0;
    } else {
      f.kind = SectorFormKind::MonomialExp;
      f.index = n;
    }
  }
  return f;
}

SectorMapResult sector_intertwining_map(ops::OpKind k, const PrimedParams& q) {
  using ops::OpKind;
  if (k != OpKind::Q && k != OpKind::V) {
    raise(Err::BadInput, "sector map supports Q and V only");
  }
  const SectorClass cls = classify(q);
  const bool in_sector =
      cls.variant == SectorVariant::LIS_upper ||
      cls.variant == SectorVariant::LIS_lower ||
      cls.variant == SectorVariant::RIS_upper ||
      cls.variant == SectorVariant::RIS_lower ||
      (cls.variant == SectorVariant::CriticalPoint && cls.on_boundary);
  if (!in_sector) {
    raise(Err::NotInSector, "(" + q.ap.str() + ", " + q.cp.str() +
                                ") is not a sector lattice point");
  }
  SectorMapResult r;
  r.image = induced_primed(k, q);
  r.image_class = classify(r.image);
  return r;
}

}  // namespace chf::lattice
