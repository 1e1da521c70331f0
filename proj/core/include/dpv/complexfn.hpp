#pragma once

#include <complex>
#include <functional>

#include "dpv/errors.hpp"

namespace dpv {

using Complex = std::complex<double>;

// Principal-branch logarithm, Arg in (-pi, pi]. Unlike std::log, the lower
// edge of the cut is folded onto the upper one (log(-1 - 0i) = +i*pi) so the
// stated range holds for every nonzero input.
Complex principal_log(Complex z);

// Evaluation region chosen by li2 for a given argument. `series` is the
// primary Maclaurin disk |z| <= 1/2; everything else is reached through a
// functional equation and is reported in WValue branch notes.
enum class Li2Region { series, reflection, inversion, log_series };

Li2Region li2_region(Complex z);

const char* to_string(Li2Region r);

// Complex dilogarithm Li2(z) = sum_{k>=1} z^k / k^2 continued to the whole
// plane, principal branch, cut along [1, inf) and continuous from below on
// the cut.
Complex li2(Complex z);

// Configuration for fd_derivative.
struct FdConfig {
    double base_step = 1e-5;    // relative step, in (0, 1e-2]
    int richardson_levels = 2;  // in [1, 4]
};

struct FdResult {
    Complex value;
    double error_estimate;  // upper estimate of |value - true derivative|
};

// Derivative of a holomorphic function by central differences along the real
// direction of the argument, refined by Richardson extrapolation. The stencil
// must not cross a branch cut or pole of fun.
FdResult fd_derivative(const std::function<Complex(Complex)>& fun, Complex z,
                       FdConfig cfg = {});

}  // namespace dpv
