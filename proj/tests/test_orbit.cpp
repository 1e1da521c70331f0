#include <cmath>

#include <doctest.h>

#include "dpv/complexfn.hpp"
#include "dpv/errors.hpp"
#include "dpv/maps.hpp"
#include "dpv/orbit.hpp"
#include "dpv/verify.hpp"
#include "support.hpp"

using dpv::Complex;
using dpv::EquationSpec;
using dpv::iterate;
using dpv::OrbitRecord;
using dpv::OrbitTermination;
using dpv::ParameterSet;
using dpv::PhasePoint;
using dpv::SurfaceType;
using testsupport::make_spec;

TEST_CASE("a one-step orbit records start and image") {
    const OrbitRecord rec = iterate(make_spec(SurfaceType::E7), {0.0, 0.0}, 1);
    CHECK(rec.terminated_by == OrbitTermination::completed);
    REQUIRE(rec.steps.size() == 2);
    CHECK(rec.steps[0].index == 0);
    CHECK(rec.steps[1].index == 1);
    CHECK(rec.steps[1].point.f == Complex(-2.0, 0.0));
    CHECK(rec.steps[1].point.g == Complex(1.0, 0.0));
    CHECK_FALSE(rec.singular_info.has_value());
}

TEST_CASE("the degenerate mixed system closes a period-2 cycle") {
    ParameterSet ps;
    ps.values = {{"a1", 0.0}, {"a2", 0.0}, {"a3", 0.0}, {"a4", 0.0}, {"s", 2.0}};
    const OrbitRecord rec = iterate(EquationSpec(SurfaceType::D4, ps), {1.0, 3.0}, 2);
    REQUIRE(rec.steps.size() == 3);
    CHECK(std::abs(rec.steps[1].point.f - 2.0) < 1e-15);
    CHECK(std::abs(rec.steps[1].point.g + 3.0) < 1e-15);
    CHECK(std::abs(rec.steps[2].point.f - 1.0) < 1e-15);
    CHECK(std::abs(rec.steps[2].point.g - 3.0) < 1e-15);
}

TEST_CASE("a singular start terminates at step 0 with the denominator named") {
    ParameterSet bad;
    bad.values = {{"a1", 2.0}, {"s", 0.0}};
    const OrbitRecord rec = iterate(EquationSpec(SurfaceType::E7, bad), {0.0, 0.0}, 5);
    CHECK(rec.terminated_by == OrbitTermination::singularity);
    REQUIRE(rec.steps.size() == 1);
    REQUIRE(rec.singular_info.has_value());
    CHECK(rec.singular_info->step_index == 0);
    CHECK(rec.singular_info->denominator == "f-relation denominator");
}

TEST_CASE("coordinates beyond the overflow bound end the record") {
    const OrbitRecord rec = iterate(make_spec(SurfaceType::E7), {1e101, 0.0}, 5);
    CHECK(rec.terminated_by == OrbitTermination::overflow);
    CHECK(rec.steps.size() == 1);

    // a huge but admissible start trips the relative denominator threshold
    // before any coordinate can reach the overflow bound
    const OrbitRecord rec2 = iterate(make_spec(SurfaceType::E7), {1e60, 0.0}, 5);
    CHECK(rec2.terminated_by == OrbitTermination::singularity);
}

TEST_CASE("iterate validates its inputs") {
    CHECK_THROWS_AS(iterate(make_spec(SurfaceType::E7), {0.0, 0.0}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(iterate(make_spec(SurfaceType::A1star), {0.0, 0.0}, 1),
                    dpv::UnsupportedFamily);
}

TEST_CASE("orbit CSV round trips bit for bit") {
    const OrbitRecord rec = iterate(make_spec(SurfaceType::E7), {0.25, -0.75}, 20);
    REQUIRE(rec.steps.size() == 21);
    const std::string csv = dpv::orbit_to_csv(rec);
    CHECK(csv.substr(0, csv.find('\n') + 1) == "step,f_re,f_im,g_re,g_im\n");
    const std::vector<PhasePoint> pts = dpv::points_from_csv(csv);
    REQUIRE(pts.size() == rec.steps.size());
    CHECK(dpv::points_to_csv(pts) == csv);
}

TEST_CASE("malformed CSV is rejected") {
    CHECK_THROWS_AS(dpv::points_from_csv("nope\n"), std::invalid_argument);
    CHECK_THROWS_AS(dpv::points_from_csv("step,f_re,f_im,g_re,g_im\n0,1,2,3\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpv::points_from_csv("step,f_re,f_im,g_re,g_im\n0,1,x,3,4\n"),
                    std::invalid_argument);
    CHECK(dpv::points_from_csv("step,f_re,f_im,g_re,g_im\n").empty());
}

TEST_CASE("frozen-parameter Jacobian determinants compose to one along an orbit") {
    const auto spec = make_spec(SurfaceType::D5);
    const OrbitRecord rec = iterate(spec, {{0.25, 0.1}, {-0.75, 0.3}}, 20);
    REQUIRE(rec.terminated_by == OrbitTermination::completed);
    dpv::FdConfig cfg;
    cfg.base_step = 5e-5;
    Complex prod = 1.0;
    for (std::size_t i = 0; i + 1 < rec.steps.size(); ++i) {
        const PhasePoint p = rec.steps[i].point;
        const auto fb = [&](Complex f, Complex g) { return dpv::step(spec, {f, g}).next.f; };
        const auto gb = [&](Complex f, Complex g) { return dpv::step(spec, {f, g}).next.g; };
        const Complex a = dpv::fd_derivative([&](Complex f) { return fb(f, p.g); }, p.f, cfg).value;
        const Complex b = dpv::fd_derivative([&](Complex g) { return fb(p.f, g); }, p.g, cfg).value;
        const Complex c = dpv::fd_derivative([&](Complex f) { return gb(f, p.g); }, p.f, cfg).value;
        const Complex d = dpv::fd_derivative([&](Complex g) { return gb(p.f, g); }, p.g, cfg).value;
        prod *= a * d - b * c;
    }
    CHECK(std::abs(prod - 1.0) <= 1e-6);
}

TEST_CASE("orbit rows snapshot the evolving parameters") {
    ParameterSet ps;
    ps.values = {{"a1", 0.25}, {"a2", 0.5}, {"a3", 0.75}, {"s", 2.0}};
    ps.evolution.kind = dpv::EvolutionKind::user_table;
    ps.evolution.table["s"] = {Complex(2.0, 0.0), Complex(0.0, 0.0)};
    const OrbitRecord rec =
        iterate(EquationSpec(SurfaceType::D5, ps), {{0.25, 0.1}, {-0.75, 0.3}}, 2);
    REQUIRE(rec.steps.size() == 3);
    CHECK(rec.steps[0].params.at("s") == Complex(2.0, 0.0));
    CHECK(rec.steps[1].params.at("s") == Complex(4.0, 0.0));
    CHECK(rec.steps[2].params.at("s") == Complex(8.0, 0.0));
}

TEST_CASE("the q constraint holds along a qPA2 orbit") {
    const auto spec = make_spec(SurfaceType::qPA2);
    const PhasePoint start = dpv::sample_regular_points(spec, 1, 3)[0];
    const OrbitRecord rec = iterate(spec, start, 5);
    REQUIRE(rec.steps.size() >= 2);
    for (const auto& row : rec.steps) {
        const auto& p = row.params;
        const Complex derived = p.at("b5") * p.at("b6") /
                                (p.at("b1") * p.at("b2") * p.at("b3") * p.at("b4") *
                                 p.at("b7") * p.at("b8"));
        CHECK(testsupport::rel(derived, p.at("q")) <= 1e-10);
    }
}
