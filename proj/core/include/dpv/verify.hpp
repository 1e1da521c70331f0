#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpv/complexfn.hpp"
#include "dpv/model.hpp"

namespace dpv {

enum class CheckKind {
    gradient,         // closed-form grad W vs finite differences of W
    map_consistency,  // W-derived map vs the forward step
    symplectic,       // det-Jacobian identity of the family's 2-form
    cross_matrix,     // generic matrix-coefficient step vs the canonical step
    hvi_identity,     // biquadratic form of the D4 matrix vs continuous H_VI
    qpa2_relations,   // both product relations plus the phi round trip
};

const char* to_string(CheckKind k);
std::optional<CheckKind> check_from_string(std::string_view name);

// Checks that run_check accepts for the given surface, in report order.
// Chart-only surfaces have none.
std::vector<CheckKind> applicable_checks(SurfaceType s);

struct VerificationReport {
    SurfaceType surface;
    CheckKind check;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::vector<std::pair<PhasePoint, double>> failures;
    std::string notes;

    bool pass() const { return failures.empty() && max_residual <= tolerance; }
};

// n pseudo-random points with |f|, |g| in [0.1, 2], re-drawn until the step,
// the W evaluation and every log/Li2 argument of the surface's Hamiltonian
// keep a safe distance from their singularities. Deterministic per seed.
// Throws std::invalid_argument for n < 1 and SamplingExhausted after
// 1000*n failed draws.
std::vector<PhasePoint> sample_regular_points(const EquationSpec& spec, int n,
                                              std::uint64_t seed);

VerificationReport run_check(const EquationSpec& spec, CheckKind check, int n,
                             std::uint64_t seed);
VerificationReport run_check(const EquationSpec& spec, CheckKind check, int n,
                             std::uint64_t seed, const FdConfig& fd);

// Serialized report object / array of objects.
std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

namespace detail {

// run_check with the tolerance forced, so tests can exercise failure
// bookkeeping (failures list, first-failure localization note) on healthy
// identities.
VerificationReport run_check_tol(const EquationSpec& spec, CheckKind check,
                                 int n, std::uint64_t seed, double tolerance,
                                 const FdConfig& fd = {});

}  // namespace detail

}  // namespace dpv
