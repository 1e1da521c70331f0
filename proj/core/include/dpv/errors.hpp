#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dpv {

// Base class for every structured error thrown by this library. Callers that
// need to distinguish causes catch the concrete types below; callers that
// only need containment (the orbit iterator, the CLI) catch Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// principal_log(0) has no value.
struct ZeroArgument : Error {
    ZeroArgument() : Error("principal_log: argument is zero") {}
};

// fd_derivative: a stencil evaluation threw, or the Richardson sequence
// produced a non-finite value.
struct StencilCrossesSingularity : Error {
    explicit StencilCrossesSingularity(const std::string& what_failed)
        : Error("fd_derivative: stencil crosses a singularity (" + what_failed + ")") {}
};

// A step denominator fell below the singularity threshold. `name` identifies
// the printed denominator, `magnitude` its absolute value at the point.
struct SingularDenominator : Error {
    std::string name;
    double magnitude;
    SingularDenominator(std::string name_, double magnitude_)
        : Error("singular denominator: " + name_), name(std::move(name_)), magnitude(magnitude_) {}
};

// Multiplicative and mixed families work in log coordinates; f or g landed
// on the excluded coordinate axis.
struct ZeroCoordinate : Error {
    std::string coordinate;
    explicit ZeroCoordinate(std::string coordinate_)
        : Error("coordinate is zero: " + coordinate_), coordinate(std::move(coordinate_)) {}
};

// The q-P(A2) product constraint q = b5*b6/(b1*b2*b3*b4*b7*b8) failed.
struct ConstraintViolated : Error {
    explicit ConstraintViolated(const std::string& detail)
        : Error("parameter constraint violated: " + detail) {}
};

// eval_W / grad_W hit the zero of a log argument; `term` names the printed
// term that blew up.
struct LogSingular : Error {
    std::string term;
    explicit LogSingular(std::string term_)
        : Error("log argument at singular point in term " + term_), term(std::move(term_)) {}
};

// An exceptional-chart denominator vanished.
struct ChartSingular : Error {
    explicit ChartSingular(const std::string& denominator)
        : Error("chart singular: " + denominator) {}
};

// Operation is not defined for the equation's family (e.g. builtin_matrix
// on q-P(A2), stepping a chart-only type).
struct UnsupportedFamily : Error {
    explicit UnsupportedFamily(const std::string& detail)
        : Error("unsupported family: " + detail) {}
};

// run_check invoked with a check that does not apply to the family.
struct InapplicableCheck : Error {
    explicit InapplicableCheck(const std::string& detail)
        : Error("inapplicable check: " + detail) {}
};

// sample_regular_points exceeded its retry budget; the parameter choice is
// degenerate enough that regular points are rare.
struct SamplingExhausted : Error {
    explicit SamplingExhausted(const std::string& detail)
        : Error("sampling exhausted: " + detail) {}
};

}  // namespace dpv
