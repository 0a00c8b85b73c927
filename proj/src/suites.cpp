#include "chf/suites.hpp"

#include <cmath>

#include "chf/intertwiners.hpp"
#include "chf/kummer.hpp"

namespace chf::suites {

double Rng::unit() {
  return std::ldexp(static_cast<double>(eng_() >> 11), -53);
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

double sample_a(Rng& rng) { return rng.uniform(-3.5, 3.5); }

double sample_c(Rng& rng) {
  for (;;) {
    const double c = rng.uniform(-4.0, 4.0);
    if (std::fabs(c - std::nearbyint(c)) < 0.05) continue;
    if (std::fabs(c) < 0.1 || std::fabs(2.0 - c) < 0.1) continue;
    return c;
  }
}

bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

namespace {

struct Sample {
  ChfParams p;
  double x = 1.0;
  bool use_u = false;  // which basis slot carries the element
};

std::vector<Sample> draw_samples(long long n, Rng& rng, double x_lo,
                                 double x_hi) {
  std::vector<Sample> s(static_cast<std::size_t>(n));
  for (auto& smp : s) {
    smp.p.a = sample_a(rng);
    smp.p.c = sample_c(rng);
    smp.x = rng.uniform(x_lo, x_hi);
    smp.use_u = rng.unit() < 0.5;
  }
  return s;
}

KernelElement element_of(const Sample& s) {
  return {s.p, s.use_u ? 0.0 : 1.0, s.use_u ? 1.0 : 0.0};
}

CheckRow reduce_row(std::string identity, const std::vector<double>& dev,
                    double tol, long long samples) {
  CheckRow row;
  row.identity = std::move(identity);
  row.max_deviation = grid::max_abs(dev);
  row.tolerance = tol;
  row.samples = samples;
  row.pass = row.max_deviation <= tol;
  return row;
}

}  // namespace

std::vector<CheckRow> intertwining_suite(long long samples, std::uint64_t seed,
                                         grid::Exec ex) {
  constexpr double kTol = 1e-9;
  std::vector<CheckRow> rows;
  Rng rng(seed);
  for (ops::OpKind op : ops::kAllOps) {
    // Reflections grow like e^x on both sides; keep their abscissas modest.
    const bool refl = op == ops::OpKind::V || op == ops::OpKind::W;
    const auto s = draw_samples(samples, rng, 0.25, refl ? 8.0 : 10.0);
    std::vector<double> dev(s.size(), 0.0);
    grid::for_index(
        static_cast<int>(s.size()),
        [&](int i) {
          const auto& smp = s[static_cast<std::size_t>(i)];
          dev[static_cast<std::size_t>(i)] =
              ops::check_intertwining(op, smp.p, {smp.x});
        },
        ex);
    rows.push_back(reduce_row(ops::op_name(op), dev, kTol, samples));
  }
  return rows;
}

std::vector<CheckRow> factorization_suite(long long samples,
                                          std::uint64_t seed, grid::Exec ex) {
  constexpr double kTol = 1e-9;
  constexpr double kProbeTol = 1e-12;
  std::vector<CheckRow> rows;
  Rng rng(seed);
  for (int i = 1; i <= 4; ++i) {
    for (ops::FactForm form : {ops::FactForm::BA, ops::FactForm::AB}) {
      const auto s = draw_samples(samples, rng, 0.25, 10.0);
      std::vector<double> dev(s.size(), 0.0);
      grid::for_index(
          static_cast<int>(s.size()),
          [&](int j) {
            const auto& smp = s[static_cast<std::size_t>(j)];
            dev[static_cast<std::size_t>(j)] =
                ops::check_factorization(i, form, element_of(smp), smp.x);
          },
          ex);
      const std::string name =
          form == ops::FactForm::BA
              ? "L = B" + std::to_string(i) + " A" + std::to_string(i) +
                    " - q" + std::to_string(i)
              : "L = A" + std::to_string(i) + " B" + std::to_string(i) +
                    " - q" + std::to_string(i) + "~";
      rows.push_back(reduce_row(name, dev, kTol, samples));
    }
  }
  for (ops::FactForm form : {ops::FactForm::BA, ops::FactForm::AB}) {
    const auto s = draw_samples(samples, rng, 0.25, 10.0);
    std::vector<double> dev(s.size() * 4, 0.0);
    grid::for_index(
        static_cast<int>(s.size()),
        [&](int j) {
          for (int i = 1; i <= 4; ++i) {
            dev[static_cast<std::size_t>(j * 4 + i - 1)] =
                ops::factorization_probe_deviation(
                    i, form, s[static_cast<std::size_t>(j)].p);
          }
        },
        ex);
    rows.push_back(reduce_row(form == ops::FactForm::BA
                                  ? "probe x^2 through the BA forms"
                                  : "probe x^2 through the AB forms",
                              dev, kProbeTol, samples));
  }
  return rows;
}

std::vector<CheckRow> composition_suite(long long samples, std::uint64_t seed,
                                        grid::Exec ex) {
  constexpr double kTol = 1e-10;
  std::vector<CheckRow> rows;
  Rng rng(seed);
  for (ops::CompositionRelation rel : ops::kAllCompositions) {
    auto s = draw_samples(samples, rng, 0.25, 8.0);
    if (rel == ops::CompositionRelation::W_QV) {
      // Reflection phases are real only at integer c; compare on M elements.
      for (auto& smp : s) smp.use_u = false;
    }
    std::vector<double> dev(s.size(), 0.0);
    grid::for_index(
        static_cast<int>(s.size()),
        [&](int i) {
          const auto& smp = s[static_cast<std::size_t>(i)];
          dev[static_cast<std::size_t>(i)] =
              ops::check_composition(rel, element_of(smp), smp.x);
        },
        ex);
    rows.push_back(reduce_row(ops::composition_name(rel), dev, kTol, samples));
  }
  return rows;
}

std::vector<CheckRow> kummer_suite(long long samples, std::uint64_t seed,
                                   grid::Exec ex) {
  constexpr double kTol = 1e-12;
  Rng rng(seed);
  struct KSample {
    double a, c, x;
  };
  std::vector<KSample> s(static_cast<std::size_t>(samples));
  for (auto& smp : s) {
    smp.a = rng.uniform(0.4, 2.5);
    smp.c = rng.uniform(0.4, 2.5);
    smp.x = rng.uniform(-10.0, 10.0);
  }
  std::vector<double> dev(s.size(), 0.0);
  grid::for_index(
      static_cast<int>(s.size()),
      [&](int i) {
        const auto& smp = s[static_cast<std::size_t>(i)];
        const double lhs = kummer_m(smp.a, smp.c, smp.x);
        const double rhs =
            std::exp(smp.x) * kummer_m(smp.c - smp.a, smp.c, -smp.x);
        dev[static_cast<std::size_t>(i)] =
            std::fabs(lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs) + 1e-300);
      },
      ex);
  std::vector<CheckRow> rows;
  rows.push_back(
      reduce_row("M(a,c;x) = e^x M(c-a,c;-x)", dev, kTol, samples));
  return rows;
}

}  // namespace chf::suites
