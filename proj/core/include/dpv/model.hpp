#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpv/complexfn.hpp"
#include "dpv/errors.hpp"

namespace dpv {

// Surface types of the implemented discrete Painleve systems plus the
// exceptional chart-only types. qPA2 doubles as the A2 surface for the
// exceptional-chart coordinates.
enum class SurfaceType {
    D4, D5, D6, D7, E6, E7,
    A3, A4, A5, A6, A7, A7prime,
    qPA2,
    A2star, A1star, A0starstar, A1, A0star,
};

enum class Family { biquadratic, multiplicative, mixed, qpa2, chart_only };

Family family_of(SurfaceType s);
bool family_steps(Family f);  // chart_only types have no map attached

std::string to_string(SurfaceType s);
std::string to_string(Family f);
std::optional<SurfaceType> surface_from_string(std::string_view name);
const std::vector<SurfaceType>& all_surface_types();

// Required parameter names in canonical order. For qPA2 the derived q is
// stored as a ninth entry but not listed here (optional on input).
const std::vector<std::string>& required_params(SurfaceType s);

// Per-name affine update applied by user_table evolution: new = scale*old + shift.
struct ParamUpdate {
    Complex scale{1.0, 0.0};
    Complex shift{0.0, 0.0};
};

enum class EvolutionKind { frozen, builtin_qpa2, user_table };

struct EvolutionRule {
    EvolutionKind kind = EvolutionKind::frozen;
    std::map<std::string, ParamUpdate> table;  // consulted for user_table only
};

// Ordered name -> value map plus the evolution rule that advances it.
struct ParameterSet {
    std::vector<std::pair<std::string, Complex>> values;
    EvolutionRule evolution;

    const Complex& at(std::string_view name) const;
    bool has(std::string_view name) const;
    void set(std::string_view name, Complex v);
};

// One application of the evolution rule. builtin_qpa2 multiplies b5..b8 by
// the stored q and re-validates the product constraint.
ParameterSet evolve_params(const ParameterSet& params);

// Phase-space point in the inhomogeneous (f, g) coordinates. Points at
// infinity are never represented; they surface as structured errors.
struct PhasePoint {
    Complex f;
    Complex g;
};

// Coefficient matrix of a biquadratic form H = (g^2, g, 1) M (f^2, f, 1)^T.
// at(i, j): i = power of g, j = power of f.
struct BiquadMatrix {
    std::array<std::array<Complex, 3>, 3> m{};

    Complex& at(int gpow, int fpow) { return m[gpow][fpow]; }
    const Complex& at(int gpow, int fpow) const { return m[gpow][fpow]; }

    // Construction and display in the printed layout: three rows for the
    // g^2, g^1, g^0 powers, each listing the f^2, f^1, f^0 coefficients.
    static BiquadMatrix from_rows(std::array<Complex, 3> g2row,
                                  std::array<Complex, 3> g1row,
                                  std::array<Complex, 3> g0row);
    std::array<std::array<Complex, 3>, 3> rows() const;
};

// A fully validated equation: surface type, parameters, derived family.
struct EquationSpec {
    SurfaceType surface;
    ParameterSet params;
    Family family;

    // Validates parameter names against required_params and, for qPA2,
    // derives or checks the stored q (ConstraintViolated on mismatch).
    EquationSpec(SurfaceType surface_, ParameterSet params_);
};

// Coefficient matrix of the invariant-curve pencil with current parameter
// values substituted. Only biquadratic, multiplicative and mixed families
// carry one.
BiquadMatrix builtin_matrix(const EquationSpec& spec);

// Exceptional chart coordinates (F, G) for the six chart-bearing types
// (A2star, A1star, A0starstar and, through qPA2, A2; A1; A0star). r is the
// chart parameter where one occurs; ChartSingular on vanishing denominators.
std::pair<Complex, Complex> exceptional_chart(SurfaceType surface, PhasePoint p, Complex r);

// JSON round-trip. Complex numbers are [re, im] pairs; see spec_to_json
// output for the exact shape. Parse errors throw std::invalid_argument,
// constraint violations ConstraintViolated.
EquationSpec spec_from_json(const std::string& text);
std::string spec_to_json(const EquationSpec& spec);
EquationSpec load_spec_file(const std::string& path);

}  // namespace dpv
