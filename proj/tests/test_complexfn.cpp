#include <cmath>
#include <random>

#include <doctest.h>

#include "dpv/complexfn.hpp"
#include "dpv/errors.hpp"
#include "support.hpp"

using dpv::Complex;
using testsupport::rel;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_close(Complex got, Complex want, double tol) {
    CAPTURE(got.real());
    CAPTURE(got.imag());
    CAPTURE(want.real());
    CAPTURE(want.imag());
    CHECK(std::abs(got - want) <= tol * (1.0 + std::abs(want)));
}

}  // namespace

TEST_CASE("principal_log stays on the principal branch") {
    CHECK(dpv::principal_log(Complex(1.0, 0.0)) == Complex(0.0, 0.0));
    CHECK(dpv::principal_log(Complex(-1.0, 0.0)).imag() == doctest::Approx(kPi));
    CHECK(dpv::principal_log(Complex(-1.0, -0.0)).imag() == doctest::Approx(kPi));
    CHECK_THROWS_AS(dpv::principal_log(Complex(0.0, 0.0)), dpv::ZeroArgument);
}

TEST_CASE("li2 exact special points") {
    CHECK(dpv::li2(Complex(0.0, 0.0)) == Complex(0.0, 0.0));
    CHECK(std::abs(dpv::li2(Complex(1.0, 0.0)) - Complex(kPi * kPi / 6.0, 0.0)) <= 1e-14);
    CHECK(std::abs(dpv::li2(Complex(-1.0, 0.0)) + Complex(kPi * kPi / 12.0, 0.0)) <= 1e-14);
}

TEST_CASE("li2 frozen oracle values") {
    check_close(dpv::li2(Complex(0.5, 0.0)), Complex(0.58224052646501251, 0.0), 1e-15);
    check_close(dpv::li2(Complex(0.3, 0.4)), Complex(0.26659686674274043, 0.46136289181910897),
                1e-15);
    check_close(dpv::li2(Complex(-2.7, 0.6)), Complex(-1.8116169485996187, 0.28961001655134622),
                1e-15);
    check_close(dpv::li2(Complex(0.9, 0.42)), Complex(1.0010029768999489, 0.79039949069344106),
                1e-15);
    check_close(dpv::li2(Complex(0.5, 0.866)), Complex(0.27416897916842275, 1.0149185675566675),
                1e-15);
    check_close(dpv::li2(Complex(1.4, -1.2)), Complex(0.72082549299943126, -1.9293306304312851),
                1e-15);
    check_close(dpv::li2(Complex(8.0, -3.0)), Complex(-0.18614540222611302, -6.0133094918035301),
                1e-15);
    check_close(dpv::li2(Complex(1e-3, 0.0)), Complex(0.0010002501111736511, 0.0), 1e-15);
    check_close(dpv::li2(Complex(1.0, 1e-9)),
                Complex(1.6449340652774301, 2.1723265837731809e-8), 1e-13);
}

TEST_CASE("li2 on the cut is continuous from below") {
    Complex on_cut = dpv::li2(Complex(2.0, 0.0));
    check_close(on_cut, Complex(2.4674011002723397, -2.1775860903036021), 1e-15);
    Complex below = dpv::li2(Complex(2.0, -1e-12));
    CHECK(std::abs(on_cut - below) <= 1e-10);
    Complex above = dpv::li2(Complex(2.0, 1e-12));
    CHECK(std::abs(on_cut.imag() - above.imag()) > 4.0);
}

TEST_CASE("li2 region selection") {
    using dpv::Li2Region;
    CHECK(dpv::li2_region(Complex(0.2, 0.1)) == Li2Region::series);
    CHECK(dpv::li2_region(Complex(0.8, 0.0)) == Li2Region::reflection);
    CHECK(dpv::li2_region(Complex(3.0, 1.0)) == Li2Region::inversion);
    CHECK(dpv::li2_region(Complex(-0.4, -0.55)) == Li2Region::log_series);
    CHECK(std::string(dpv::to_string(Li2Region::series)) == "series");
    CHECK(std::string(dpv::to_string(Li2Region::log_series)) == "log_series");
}

TEST_CASE("li2 reflection identity at 100 seeded points") {
    std::mt19937_64 rng(11);
    auto uni = [&] { return (rng() >> 11) * 0x1.0p-53; };
    double worst = 0.0;
    int kept = 0;
    while (kept < 100) {
        Complex z(3.0 * uni() - 1.0, 1.45 * uni() + 0.05);
        ++kept;
        Complex lhs = dpv::li2(z) + dpv::li2(1.0 - z);
        Complex rhs = Complex(kPi * kPi / 6.0, 0.0) -
                      dpv::principal_log(z) * dpv::principal_log(1.0 - z);
        worst = std::max(worst, rel(lhs, rhs));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("li2 inversion identity at 100 seeded points") {
    std::mt19937_64 rng(12);
    auto uni = [&] { return (rng() >> 11) * 0x1.0p-53; };
    double worst = 0.0;
    int kept = 0;
    while (kept < 100) {
        Complex z(4.0 * uni() - 2.0, 1.45 * uni() + 0.05);
        if (std::abs(z) < 1.2) continue;
        ++kept;
        Complex lz = dpv::principal_log(-z);
        Complex lhs = dpv::li2(z) + dpv::li2(1.0 / z);
        Complex rhs = -Complex(kPi * kPi / 6.0, 0.0) - 0.5 * lz * lz;
        worst = std::max(worst, rel(lhs, rhs));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("fd_derivative on polynomials and li2") {
    auto cube = [](Complex z) { return z * z * z; };
    Complex z0(1.0, 1.0);
    dpv::FdResult r = dpv::fd_derivative(cube, z0);
    check_close(r.value, 3.0 * z0 * z0, 1e-11);
    CHECK(r.error_estimate < 1e-8);

    dpv::FdResult d = dpv::fd_derivative([](Complex z) { return dpv::li2(z); }, Complex(0.3, 0.0));
    check_close(d.value, Complex(1.1889164797957746, 0.0), 1e-10);
}

TEST_CASE("fd_derivative validates its configuration") {
    auto id = [](Complex z) { return z; };
    dpv::FdConfig bad;
    bad.base_step = 0.0;
    CHECK_THROWS_AS(dpv::fd_derivative(id, Complex(1.0, 0.0), bad), std::invalid_argument);
    bad.base_step = 0.02;
    CHECK_THROWS_AS(dpv::fd_derivative(id, Complex(1.0, 0.0), bad), std::invalid_argument);
    bad.base_step = 1e-5;
    bad.richardson_levels = 0;
    CHECK_THROWS_AS(dpv::fd_derivative(id, Complex(1.0, 0.0), bad), std::invalid_argument);
    bad.richardson_levels = 5;
    CHECK_THROWS_AS(dpv::fd_derivative(id, Complex(1.0, 0.0), bad), std::invalid_argument);
}

TEST_CASE("fd_derivative reports a stencil that hits a singularity") {
    auto fun = [](Complex z) -> Complex {
        if (std::abs(z - Complex(0.5, 0.0)) < 6e-6) throw dpv::SingularDenominator("den", 0.0);
        return z * z;
    };
    CHECK_THROWS_AS(dpv::fd_derivative(fun, Complex(0.5, 0.0)), dpv::StencilCrossesSingularity);
}
