#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "chf/kummer.hpp"
#include "chf/types.hpp"

// The eleven first-order intertwiners of the kernel family.  Each operator X
// satisfies L_target X = X L_source for an induced parameter move, and acts
// on the kernel basis {M, u} by scalar coefficients; apply_symbolic moves a
// KernelElement through that coefficient table while apply_numeric evaluates
// the defining differential expression directly.  Agreement of the two is the
// intertwining check.

namespace chf::ops {

enum class OpKind { Q, A1, B1, A2, B2, A3, B3, A4, B4, V, W };

inline constexpr std::array<OpKind, 11> kAllOps = {
    OpKind::Q,  OpKind::A1, OpKind::B1, OpKind::A2, OpKind::B2, OpKind::A3,
    OpKind::B3, OpKind::A4, OpKind::B4, OpKind::V,  OpKind::W};

const char* op_name(OpKind k);
std::optional<OpKind> op_from_name(std::string_view name);

// Parameter move (a, c) -> (a~, c~) induced by the operator.
ChfParams induced_params(OpKind k, const ChfParams& p);

// Basis action at source parameters (a, c).  The image of the M component
// lands on the target M (or target u when swaps_basis), scaled by
// coeff_from_m; likewise for the u component.  Reflections additionally
// carry the phase (-1)^(1-c) on the u image; it is recorded as a flag and
// materialized only when 1-c is an integer.
struct BasisAction {
  ChfParams target;
  bool swaps_basis = false;
  double coeff_from_m = 1.0;
  double coeff_from_u = 1.0;
  double denom_m = 1.0;  // denominator behind coeff_from_m (pole guard)
  double denom_u = 1.0;
  bool phase_on_u = false;
};

BasisAction basis_action(OpKind k, const ChfParams& p);

// Push a kernel element through the coefficient table.  Raises
// CoefficientPole only for components actually present in f, and
// PhaseNotReal when a reflection phase is demanded at non-integer 1-c.
KernelElement apply_symbolic(OpKind k, const KernelElement& f);

// Evaluate the operator's differential expression on f at x, using exact
// derivative shifts (no finite differences).  Power-prefactor operators and
// reflections require x > 0; reflections require a pure-M element.
double apply_numeric(OpKind k, const KernelElement& f, double x,
                     const SeriesConfig& cfg = global_series_config());

// Max over both basis branches and the given abscissas of the relative
// deviation |apply_numeric - eval(apply_symbolic)| / (|.| + |.| + 1e-30).
double check_intertwining(OpKind k, const ChfParams& p,
                          const std::vector<double>& xs,
                          const SeriesConfig& cfg = global_series_config());

// Factorization constants: L = B^i A^i - q^i(a,c) and
// L = A^i B^i - q^i at the B^i-shifted parameters, i = 1..4.
double factorization_constant(int i, const ChfParams& p);

enum class FactForm { BA, AB };

// Relative residual of the factorization identity applied to a kernel
// element at x (inner factor symbolic, outer factor numeric).
double check_factorization(int i, FactForm form, const KernelElement& f,
                           double x,
                           const SeriesConfig& cfg = global_series_config());

// The same identity applied to the non-kernel probe x^2 through an exact
// power-sum representation; returns the max relative coefficient deviation
// against (2 + 2c) x - (2 + a) x^2.
double factorization_probe_deviation(int i, FactForm form, const ChfParams& p);

enum class CompositionRelation {
  W_QV,      // W = Q V
  A2_QA1Q,   // A2 = Q A1 Q
  A3_QA1,    // A3 = Q A1
  A4_QA2,    // A4 = Q A2
  B2_QB1Q,   // B2 = Q B1 Q
  B3_QB2,    // B3 = Q B2
  B4_QB1,    // B4 = Q B1
  QQ_IDENT,  // Q Q = id
};

inline constexpr std::array<CompositionRelation, 8> kAllCompositions = {
    CompositionRelation::W_QV,    CompositionRelation::A2_QA1Q,
    CompositionRelation::A3_QA1,  CompositionRelation::A4_QA2,
    CompositionRelation::B2_QB1Q, CompositionRelation::B3_QB2,
    CompositionRelation::B4_QB1,  CompositionRelation::QQ_IDENT};

const char* composition_name(CompositionRelation r);

// Left-hand operator applied directly vs the right-hand word applied
// rightmost-first with parameter threading; max relative deviation at x.
double check_composition(CompositionRelation r, const KernelElement& f,
                         double x,
                         const SeriesConfig& cfg = global_series_config());

}  // namespace chf::ops
