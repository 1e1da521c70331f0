#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dpv/model.hpp"

namespace dpv {

// Result of one forward step (f, g) -> (fbar, gbar). diagnostics records
// every denominator that was checked, with its magnitude at the point; a
// magnitude below the singularity threshold raises instead of appearing here.
struct StepResult {
    PhasePoint next;
    ParameterSet next_params;
    std::vector<std::pair<std::string, double>> diagnostics;
};

// Forward steps in the printed explicit conventions, one per family. Each
// solves relation 1 for gbar (degree one in gbar), evolves the parameters,
// and solves relation 2 for fbar. SingularDenominator when a denominator
// falls under 1e-12*(1+|numerator|); ZeroCoordinate where the family
// works in log coordinates and f or g sits on the excluded axis.
StepResult biquadratic_step(const EquationSpec& spec, PhasePoint p);
StepResult multiplicative_step(const EquationSpec& spec, PhasePoint p);
StepResult mixed_step(const EquationSpec& spec, PhasePoint p);

// q-P(A2): gbar from the first product relation (linear once (f gbar - 1)
// is cleared), fbar = psi(f, gbar). Both product relations are re-verified
// to 1e-9 afterwards; a violation raises ConstraintViolated.
StepResult qpa2_step(const EquationSpec& spec, PhasePoint p);

// Dispatch on spec.family; UnsupportedFamily for chart-only types.
StepResult step(const EquationSpec& spec, PhasePoint p);

// The matrix-generic step: both relations taken verbatim from
// builtin_matrix under the family's generic convention, with no per-type
// corrections. Differs from the canonical step exactly where the printed
// matrix and the printed explicit system disagree (A7', D4); the
// cross_matrix verification measures that gap.
StepResult matrix_step(const EquationSpec& spec, PhasePoint p);

namespace detail {

// Same steps with a caller-chosen relative singularity threshold. The
// verification sampler uses a wide margin (1e-3) so that accepted points
// are robustly regular, not merely nonsingular.
StepResult step_with_threshold(const EquationSpec& spec, PhasePoint p, double tau);
StepResult matrix_step_with_threshold(const EquationSpec& spec, PhasePoint p, double tau);

}  // namespace detail

}  // namespace dpv
