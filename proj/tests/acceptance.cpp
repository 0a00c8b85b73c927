// Acceptance gate: every release-blocking behavior in one binary, one line
// of output per criterion, exit 1 if anything fails.  Tolerances are pinned
// here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chf/intertwiners.hpp"
#include "chf/kummer.hpp"
#include "chf/lattice.hpp"
#include "chf/schrodinger.hpp"
#include "chf/suites.hpp"

using namespace chf;

namespace {

constexpr std::uint64_t kSeed = 20260816;

std::string fmt_dev(double dev) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "max dev %.3g", dev);
  return buf;
}

// ---- 01: kernel membership ---------------------------------------------------

bool crit_kernel_residual(std::string& detail) {
  suites::Rng rng(kSeed);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double a = rng.uniform(-10.0, 10.0);
    double c = 0.0;
    do {
      c = rng.uniform(-10.0, 10.0);
    } while (std::fabs(c - std::nearbyint(c)) < 0.05);
    for (int j = 0; j < 5; ++j) {
      const double x = rng.uniform(0.25, 10.0);
      worst = std::max(worst, kernel_residual({{a, c}, 1.0, 0.0}, x));
      worst = std::max(worst, kernel_residual({{a, c}, 0.0, 1.0}, x));
    }
  }
  detail = fmt_dev(worst);
  return worst <= 1e-9;
}

// ---- 02..05: identity suites ---------------------------------------------------

bool suite_ok(const std::vector<suites::CheckRow>& rows, std::string& detail) {
  double worst_ratio = 0.0;
  const suites::CheckRow* worst_row = nullptr;
  for (const auto& r : rows) {
    const double ratio = r.max_deviation / r.tolerance;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_row = &r;
    }
  }
  if (worst_row != nullptr) {
    detail = worst_row->identity + ": " + fmt_dev(worst_row->max_deviation);
  }
  return suites::all_pass(rows);
}

bool crit_intertwining(std::string& detail) {
  return suite_ok(suites::intertwining_suite(50, kSeed + 1), detail);
}

bool crit_factorization(std::string& detail) {
  return suite_ok(suites::factorization_suite(50, kSeed + 2), detail);
}

bool crit_composition(std::string& detail) {
  return suite_ok(suites::composition_suite(50, kSeed + 3), detail);
}

bool crit_kummer(std::string& detail) {
  return suite_ok(suites::kummer_suite(100, kSeed + 4), detail);
}

// ---- 06: sector generation ------------------------------------------------------

using PointSet = std::set<std::pair<long long, long long>>;

PointSet closure(const lattice::PrimedParams& corner,
                 std::initializer_list<ops::OpKind> steps, int depth) {
  PointSet out;
  std::vector<lattice::PrimedParams> frontier{corner};
  out.insert({corner.ap.num, corner.cp.num});
  for (int d = 0; d < depth; ++d) {
    std::vector<lattice::PrimedParams> next;
    for (const auto& q : frontier) {
      for (ops::OpKind op : steps) {
        const auto img = lattice::induced_primed(op, q);
        if (out.insert({img.ap.num, img.cp.num}).second) next.push_back(img);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool crit_sector_generation(std::string& detail) {
  constexpr int kDepth = 6;
  // Left sector grows from (-1, 0) by A1 (m) and A2 (n).
  const PointSet left = closure({Rational::of(-1, 1), Rational::of(0, 1)},
                                {ops::OpKind::A1, ops::OpKind::A2}, kDepth);
  PointSet left_want;
  for (long long m = 0; m <= kDepth; ++m) {
    for (long long n = 0; m + n <= kDepth; ++n) {
      left_want.insert({-1 - m - n, m - n});
    }
  }
  if (left != left_want) {
    detail = "left sector sets differ";
    return false;
  }
  // Right sector grows from (1, 0) by B2 (m) and B1 (n).
  const PointSet right = closure({Rational::of(1, 1), Rational::of(0, 1)},
                                 {ops::OpKind::B2, ops::OpKind::B1}, kDepth);
  PointSet right_want;
  for (long long m = 0; m <= kDepth; ++m) {
    for (long long n = 0; m + n <= kDepth; ++n) {
      right_want.insert({1 + m + n, m - n});
    }
  }
  if (right != right_want) {
    detail = "right sector sets differ";
    return false;
  }
  // classify() agrees pointwise, indices included.
  for (long long m = 0; m <= kDepth; ++m) {
    for (long long n = 0; m + n <= kDepth; ++n) {
      const lattice::PrimedParams ql{Rational::of(-1 - m - n, 1),
                                     Rational::of(m - n, 1)};
      const auto cl = lattice::classify(ql);
      if (m == 0 && n == 0) {
        if (cl.variant != lattice::SectorVariant::CriticalPoint) {
          detail = "corner classification";
          return false;
        }
      } else if ((m >= n &&
                  cl.variant != lattice::SectorVariant::LIS_upper) ||
                 (m < n && cl.variant != lattice::SectorVariant::LIS_lower) ||
                 !cl.indices || cl.indices->first != m ||
                 cl.indices->second != n) {
        detail = "left classification at m=" + std::to_string(m) +
                 " n=" + std::to_string(n);
        return false;
      }
      const lattice::PrimedParams qr{Rational::of(1 + m + n, 1),
                                     Rational::of(m - n, 1)};
      const auto cr = lattice::classify(qr);
      if (m == 0 && n == 0) {
        if (cr.variant != lattice::SectorVariant::CriticalPoint) {
          detail = "corner classification";
          return false;
        }
      } else if ((m >= n &&
                  cr.variant != lattice::SectorVariant::RIS_upper) ||
                 (m < n && cr.variant != lattice::SectorVariant::RIS_lower) ||
                 !cr.indices || cr.indices->first != m ||
                 cr.indices->second != n) {
        detail = "right classification at m=" + std::to_string(m) +
                 " n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = "depth 6, " + std::to_string(left_want.size() * 2) + " points";
  return true;
}

// ---- 07: boundary forms and their annihilators -----------------------------------

bool crit_boundary_annihilation(std::string& detail) {
  std::vector<lattice::PrimedParams> pts;
  for (long long s = 0; s <= 6; ++s) {
    pts.push_back({Rational::of(-1 - s, 1), Rational::of(s, 1)});   // left upper
    pts.push_back({Rational::of(-1 - s, 1), Rational::of(-s, 1)});  // left lower
    pts.push_back({Rational::of(1 + s, 1), Rational::of(s, 1)});    // right upper
    pts.push_back({Rational::of(1 + s, 1), Rational::of(-s, 1)});   // right lower
  }
  double worst = 0.0;
  for (const auto& q : pts) {
    const auto f = lattice::sector_function(q);
    const auto bridge = f.bridge();
    const auto img = ops::apply_symbolic(f.annihilator(), bridge);
    if (img.alpha != 0.0 || img.beta != 0.0) {
      detail = f.name() + ": symbolic image not zero";
      return false;
    }
    for (int j = 0; j <= 9; ++j) {
      const double x = 0.5 + 0.5 * j;
      const double scale = std::fabs(f.eval(x)) + 1.0;
      const double dev =
          std::fabs(ops::apply_numeric(f.annihilator(), bridge, x)) / scale;
      worst = std::max(worst, dev);
      // The bridge element must reproduce the closed form it stands for.
      const double rep =
          std::fabs(eval_kernel(bridge, x) - f.eval(x)) / scale;
      worst = std::max(worst, rep);
    }
  }
  detail = fmt_dev(worst);
  return worst <= 1e-12;
}

// ---- 08: bound states solve their equations ---------------------------------------

bool crit_bound_state_residuals(std::string& detail) {
  const qm::PotentialSpec pots[] = {
      qm::oscillator_1d(), qm::oscillator_radial(3, 1),
      qm::coulomb_radial(3, 0), qm::morse(1.0, 7.5)};
  double worst = 0.0;
  for (const auto& pot : pots) {
    for (long long k = 0; k < 3; ++k) {
      const auto w = qm::bound_state(pot, k);
      const auto rep = qm::schrodinger_residual(w);
      if (rep.max_residual > worst) {
        worst = rep.max_residual;
        detail = std::string(qm::potential_kind_name(pot.kind)) +
                 " k=" + std::to_string(k) + ": " + fmt_dev(worst);
      }
    }
  }
  return worst <= 1e-5;
}

// ---- 09: closed-form spectra --------------------------------------------------------

bool crit_spectra(std::string& detail) {
  double worst = 0.0;
  const auto track = [&](double got, double want) {
    worst = std::max(worst, std::fabs(got - want) /
                                (std::fabs(want) > 0 ? std::fabs(want) : 1.0));
  };
  const auto s1 = qm::spectrum(qm::oscillator_1d(), 6);
  for (std::size_t k = 0; k < s1.size(); ++k) {
    track(s1[k], 2.0 * static_cast<double>(k) + 1.0);
    if (k > 0) track(s1[k] - s1[k - 1], 2.0);
  }
  const auto s3 = qm::spectrum(qm::oscillator_radial(3, 2), 6);
  for (std::size_t k = 0; k < s3.size(); ++k) {
    track(s3[k], 4.0 * static_cast<double>(k) + 2.0 * 2.0 + 3.0);
  }
  const auto dc = qm::param_dictionary(qm::coulomb_radial(3, 1));
  for (long long k = 0; k < 6; ++k) {
    const double n = static_cast<double>(k) + 1.0 + 1.0;
    track(dc.energy(k), -1.0 / (n * n));
    track(dc.energy_from_ap(dc.ap(k)), -1.0 / (n * n));
  }
  const auto dm = qm::param_dictionary(qm::morse(0.7, 9.5));
  for (long long k = 0; k < dm.max_states(); ++k) {
    const double nu = 9.5 - 1.0 - 2.0 * static_cast<double>(k);
    track(dm.energy(k), -0.25 * 0.7 * 0.7 * nu * nu);
  }
  detail = fmt_dev(worst);
  return worst <= 1e-12;
}

// ---- 10: the two representations of each level agree -------------------------------

bool crit_branch_ratio(std::string& detail) {
  struct Probe {
    qm::PotentialSpec pot;
    long long levels;
  };
  const Probe probes[] = {{qm::oscillator_1d(), 5},
                          {qm::oscillator_radial(3, 1), 5},
                          {qm::coulomb_radial(3, 1), 5},
                          {qm::morse(1.0, 11.0), 5}};
  double worst = 0.0;
  for (const auto& pr : probes) {
    for (long long k = 0; k < pr.levels; ++k) {
      const auto plus = qm::bound_state(pr.pot, k, qm::BranchSide::plus);
      const auto minus = qm::bound_state(pr.pot, k, qm::BranchSide::minus);
      double r0 = 0.0;
      for (int j = 0; j < 5; ++j) {
        const double t = 0.2 + 0.15 * j;
        const double y = plus.y_lo + t * (plus.y_hi - plus.y_lo);
        const double num = plus.eval(y);
        const double den = minus.eval(y);
        if (std::fabs(den) < 1e-300) continue;
        const double r = num / den;
        if (j == 0) {
          r0 = r;
        } else {
          worst = std::max(worst, std::fabs(r - r0) / std::fabs(r0));
        }
      }
    }
  }
  detail = fmt_dev(worst);
  return worst <= 1e-8;
}

// ---- 11: cross maps -----------------------------------------------------------------

bool crit_cross_maps(std::string& detail) {
  double worst = 0.0;
  // Morse images of planar oscillator states, labeled (n, ell).
  const std::pair<long long, long long> morse_pairs[] = {
      {2, 1}, {3, 2}, {4, 1}, {4, 3}};
  for (auto [n, ell] : morse_pairs) {
    const long long k = (n - 1 - ell) / 2;
    const auto src = qm::bound_state(qm::oscillator_radial(2, ell), k);
    const auto r = qm::cross_map_oscillator_morse(src, 1.0);
    const auto rep =
        qm::schrodinger_residual(r.psi, r.pot, r.energy, r.y_lo, r.y_hi);
    worst = std::max(worst, rep.max_residual);
    if (qm::count_nodes(r.psi, r.y_lo, r.y_hi) != r.expected_nodes) {
      detail = "morse node count at n=" + std::to_string(n);
      return false;
    }
  }
  const std::pair<long long, long long> coulomb_pairs[] = {
      {1, 0}, {3, 0}, {3, 2}};
  for (auto [n, ell] : coulomb_pairs) {
    const long long k = (n - 1 - ell) / 2;
    const auto src = qm::bound_state(qm::oscillator_radial(2, ell), k);
    const auto r = qm::cross_map_oscillator_coulomb(src);
    const auto rep =
        qm::schrodinger_residual(r.psi, r.pot, r.energy, r.y_lo, r.y_hi);
    worst = std::max(worst, rep.max_residual);
    if (qm::count_nodes(r.psi, r.y_lo, r.y_hi) != r.expected_nodes) {
      detail = "coulomb node count at n=" + std::to_string(n);
      return false;
    }
  }
  detail = fmt_dev(worst);
  return worst <= 1e-5;
}

// ---- 12: ladder and fold commute ------------------------------------------------------

bool crit_commutative_diagram(std::string& detail) {
  const std::vector<qm::Wavefunction> states = {
      qm::bound_state(qm::oscillator_1d(), 2),
      qm::bound_state(qm::oscillator_1d(), 3),
      qm::bound_state(qm::oscillator_radial(2, 1), 1)};
  const ops::OpKind steps[] = {ops::OpKind::A1, ops::OpKind::B1,
                               ops::OpKind::A2, ops::OpKind::B2};
  double worst = 0.0;
  for (const auto& w : states) {
    for (ops::OpKind op : steps) {
      const auto img = ops::apply_symbolic(op, w.element);
      for (int j = 1; j <= 8; ++j) {
        const double x = 0.5 + 0.6 * j;
        const double phi = qm::phi_factor(img.p, w.map, x);
        const double path1 = eval_kernel(img, x) / phi;
        const double path2 = ops::apply_numeric(op, w.element, x) / phi;
        const double dev = std::fabs(path1 - path2) /
                           (std::fabs(path1) + std::fabs(path2) + 1e-30);
        worst = std::max(worst, dev);
      }
    }
  }
  detail = fmt_dev(worst);
  return worst <= 1e-9;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"kernel residuals for both solutions", crit_kernel_residual},
      {"basis action matches the operators", crit_intertwining},
      {"ladder factorizations of the operator", crit_factorization},
      {"composition relations", crit_composition},
      {"reflection formula", crit_kummer},
      {"sector generation to depth 6", crit_sector_generation},
      {"boundary forms and annihilators", crit_boundary_annihilation},
      {"bound states solve their equations", crit_bound_state_residuals},
      {"closed-form spectra", crit_spectra},
      {"two representations per level", crit_branch_ratio},
      {"oscillator cross maps", crit_cross_maps},
      {"ladder and fold commute", crit_commutative_diagram},
  };

  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    if (!ok) ++failures;
    std::printf("%s criterion %02zu %s%s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].label, detail.empty() ? "" : " [",
                detail.c_str(), detail.empty() ? "" : "]");
  }
  const auto dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::printf("%d/%zu criteria passed in %.2fs\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(),
              dt);
  return failures == 0 ? 0 : 1;
}
