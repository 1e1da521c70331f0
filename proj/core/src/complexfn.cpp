#include "dpv/complexfn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpv {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPi2Over6 = kPi * kPi / 6.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Maclaurin sum on the primary disk |z| <= 1/2: ~52 terms at the rim.
Complex li2_series(Complex z) {
    Complex sum = z;
    Complex pw = z;
    for (int k = 2; k < 120; ++k) {
        pw *= z;
        const Complex term = pw / static_cast<double>(k * k);
        sum += term;
        if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
    }
    return sum;
}

// Li2(z) = sum_{n>=0} B_n u^(n+1)/(n+1)!, u = -log(1-z), convergent for
// |u| < 2*pi. Covers the lens 1/2 < |z| < 2, |1-z| > 1/2 where neither the
// series disk nor the reflection/inversion images reach (|u| <= 3.33 there).
// Coefficients B_n/(n+1)! for even n (odd Bernoulli numbers vanish; the lone
// B_1 term -u^2/4 is added explicitly).
constexpr std::array<double, 31> kLogSeries = {
    1.0000000000000000,
    0.027777777777777778,
    -0.00027777777777777778,
    4.7241118669690098e-6,
    -9.1857730746619636e-8,
    1.8978869988970999e-9,
    -4.0647616451442255e-11,
    8.9216910204564526e-13,
    -1.9939295860721076e-14,
    4.5189800296199182e-16,
    -1.0356517612181247e-17,
    2.3952186210261867e-19,
    -5.5817858743250093e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.3159756527022034e-26,
    -1.7408456572340007e-27,
    4.1576356446138997e-29,
    -9.9621484882846221e-31,
    2.3940344248961653e-32,
    -5.7683473553673901e-34,
    1.3931794796470080e-35,
    -3.3721219654850895e-37,
    8.1782087775621026e-39,
    -1.9870108311523859e-40,
    4.8357785180405509e-42,
    -1.1786937248718384e-43,
    2.8770964081172571e-45,
    -7.0320590981560280e-47,
    1.7208603145033146e-48,
    -4.2160723905604455e-50,
};

Complex li2_log_series(Complex z) {
    const Complex u = -std::log(1.0 - z);
    const Complex u2 = u * u;
    Complex sum = u - u2 / 4.0;
    Complex pw = u;  // u^(2i+1)
    for (std::size_t i = 1; i < kLogSeries.size(); ++i) {
        pw *= u2;
        const Complex term = kLogSeries[i] * pw;
        sum += term;
        if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

Complex principal_log(Complex z) {
    if (z.real() == 0.0 && z.imag() == 0.0) throw ZeroArgument();
    // Fold the lower edge of the cut onto the upper one so Arg lands in
    // (-pi, pi] even for im = -0.0 on the negative real axis.
    if (z.imag() == 0.0 && z.real() < 0.0) z = Complex(z.real(), 0.0);
    return std::log(z);
}

Li2Region li2_region(Complex z) {
    const double az = std::abs(z);
    if (az <= 0.5) return Li2Region::series;
    if (az >= 2.0) return Li2Region::inversion;
    if (std::abs(1.0 - z) <= 0.5) return Li2Region::reflection;
    return Li2Region::log_series;
}

const char* to_string(Li2Region r) {
    switch (r) {
        case Li2Region::series: return "series";
        case Li2Region::reflection: return "reflection";
        case Li2Region::inversion: return "inversion";
        case Li2Region::log_series: return "log_series";
    }
    return "unknown";
}

Complex li2(Complex z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return {0.0, 0.0};
    // The branch point itself: the reflection formula would form 0 * log(0).
    if (z.real() == 1.0 && z.imag() == 0.0) return {kPi2Over6, 0.0};
    // Values on the cut [1, inf) are the limit from below. Real inputs carry
    // im = +0 which std::log would continue from above, so nudge them under
    // the axis before any region formula runs.
    if (z.imag() == 0.0 && z.real() > 1.0) z = Complex(z.real(), -0.0);
    switch (li2_region(z)) {
        case Li2Region::series:
            return li2_series(z);
        case Li2Region::reflection:
            // Li2(z) + Li2(1-z) = pi^2/6 - log(z) log(1-z); 1-z lands in the
            // primary disk.
            return kPi2Over6 - std::log(z) * std::log(1.0 - z) - li2_series(1.0 - z);
        case Li2Region::inversion: {
            // Li2(z) + Li2(1/z) = -pi^2/6 - log^2(-z)/2; 1/z lands in the
            // primary disk.
            const Complex lm = std::log(-z);
            return -kPi2Over6 - 0.5 * lm * lm - li2_series(1.0 / z);
        }
        case Li2Region::log_series:
            return li2_log_series(z);
    }
    return {};  // unreachable
}

FdResult fd_derivative(const std::function<Complex(Complex)>& fun, Complex z,
                       FdConfig cfg) {
    if (!(cfg.base_step > 0.0) || cfg.base_step > 1e-2)
        throw std::invalid_argument("fd_derivative: base_step must be in (0, 1e-2]");
    if (cfg.richardson_levels < 1 || cfg.richardson_levels > 4)
        throw std::invalid_argument("fd_derivative: richardson_levels must be in [1, 4]");

    const int levels = cfg.richardson_levels;
    const double h0 = cfg.base_step * std::max(1.0, std::abs(z));

    // Richardson triangle over central differences D(h/2^k); each level
    // cancels the next even power of h in the truncation error.
    std::array<std::array<Complex, 5>, 5> r{};
    double rounding_floor = 0.0;
    for (int k = 0; k <= levels; ++k) {
        const double h = h0 / static_cast<double>(1 << k);
        Complex fp, fm;
        try {
            fp = fun(z + h);
            fm = fun(z - h);
        } catch (const std::exception& e) {
            throw StencilCrossesSingularity(e.what());
        }
        r[k][0] = (fp - fm) / (2.0 * h);
        if (!finite(r[k][0]))
            throw StencilCrossesSingularity("non-finite stencil value");
        rounding_floor = 4.0 * kEps * (std::abs(fp) + std::abs(fm)) / (2.0 * h);
        for (int m = 1; m <= k; ++m) {
            const double p4 = static_cast<double>(1 << (2 * m));  // 4^m
            r[k][m] = (p4 * r[k][m - 1] - r[k - 1][m - 1]) / (p4 - 1.0);
            if (!finite(r[k][m]))
                throw StencilCrossesSingularity("Richardson sequence diverged");
        }
    }
    const Complex value = r[levels][levels];
    const double err = std::abs(value - r[levels][levels - 1]) + rounding_floor;
    return {value, err};
}

}  // namespace dpv
