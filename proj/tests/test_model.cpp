#include <doctest.h>

#include "dpv/errors.hpp"
#include "dpv/model.hpp"
#include "support.hpp"

using dpv::Complex;
using dpv::EquationSpec;
using dpv::Family;
using dpv::ParameterSet;
using dpv::SurfaceType;
using testsupport::make_spec;

TEST_CASE("surface tags, families and parameter lists") {
    CHECK(dpv::all_surface_types().size() == 18);
    CHECK(dpv::family_of(SurfaceType::E7) == Family::biquadratic);
    CHECK(dpv::family_of(SurfaceType::A6) == Family::multiplicative);
    CHECK(dpv::family_of(SurfaceType::D4) == Family::mixed);
    CHECK(dpv::family_of(SurfaceType::qPA2) == Family::qpa2);
    CHECK(dpv::family_of(SurfaceType::A0star) == Family::chart_only);
    CHECK(dpv::family_steps(Family::biquadratic));
    CHECK_FALSE(dpv::family_steps(Family::chart_only));
    CHECK(dpv::to_string(SurfaceType::A7prime) == "A7prime");
    CHECK(dpv::surface_from_string("qPA2") == SurfaceType::qPA2);
    CHECK_FALSE(dpv::surface_from_string("nonsense").has_value());
    CHECK(dpv::required_params(SurfaceType::D6) == std::vector<std::string>{"a1", "b1", "s"});
    CHECK(dpv::required_params(SurfaceType::A2star).empty());
}

TEST_CASE("spec construction validates parameters") {
    ParameterSet ps;
    ps.values = {{"a1", 2.0}};
    CHECK_THROWS_AS(EquationSpec(SurfaceType::E7, ps), std::invalid_argument);
    ps.values = {{"a1", 2.0}, {"s", 1.0}, {"zz", 0.1}};
    CHECK_THROWS_AS(EquationSpec(SurfaceType::E7, ps), std::invalid_argument);
    ps.values = {{"s", 1.0}, {"a1", 2.0}};
    EquationSpec spec(SurfaceType::E7, ps);
    CHECK(spec.params.values[0].first == "a1");
    CHECK(spec.params.values[1].first == "s");
    CHECK(spec.family == Family::biquadratic);
}

TEST_CASE("qPA2 constraint handling") {
    ParameterSet ps;
    for (int k = 1; k <= 8; ++k) ps.values.push_back({"b" + std::to_string(k), 1.0});
    ps.set("b5", 2.0);
    EquationSpec spec(SurfaceType::qPA2, ps);
    CHECK(spec.params.at("q") == Complex(2.0, 0.0));

    ps.values.push_back({"q", 3.0});
    CHECK_THROWS_AS(EquationSpec(SurfaceType::qPA2, ps), dpv::ConstraintViolated);

    ParameterSet nonq;
    nonq.values = {{"a1", 2.0}, {"s", 1.0}};
    nonq.evolution.kind = dpv::EvolutionKind::builtin_qpa2;
    CHECK_THROWS_AS(EquationSpec(SurfaceType::E7, nonq), std::invalid_argument);
}

TEST_CASE("parameter evolution rules") {
    ParameterSet ps;
    ps.values = {{"a1", 2.0}, {"s", 1.0}};
    ParameterSet frozen = dpv::evolve_params(ps);
    CHECK(frozen.at("a1") == Complex(2.0, 0.0));
    CHECK(frozen.at("s") == Complex(1.0, 0.0));

    ps.evolution.kind = dpv::EvolutionKind::user_table;
    ps.evolution.table["s"] = {Complex(2.0, 0.0), Complex(0.5, 0.0)};
    ParameterSet moved = dpv::evolve_params(ps);
    CHECK(moved.at("s") == Complex(2.5, 0.0));
    CHECK(moved.at("a1") == Complex(2.0, 0.0));

    ParameterSet qs;
    for (int k = 1; k <= 8; ++k) qs.values.push_back({"b" + std::to_string(k), 1.0});
    qs.set("b5", 2.0);
    qs.evolution.kind = dpv::EvolutionKind::builtin_qpa2;
    ParameterSet evolved = dpv::evolve_params(EquationSpec(SurfaceType::qPA2, qs).params);
    CHECK(evolved.at("b5") == Complex(4.0, 0.0));
    CHECK(evolved.at("b6") == Complex(2.0, 0.0));
    CHECK(evolved.at("b7") == Complex(2.0, 0.0));
    CHECK(evolved.at("b8") == Complex(2.0, 0.0));
    CHECK(evolved.at("b1") == Complex(1.0, 0.0));
    CHECK(evolved.at("q") == Complex(2.0, 0.0));
}

TEST_CASE("builtin matrices match the catalog") {
    dpv::BiquadMatrix e7 = dpv::builtin_matrix(make_spec(SurfaceType::E7));
    CHECK(e7.rows()[0] == std::array<Complex, 3>{Complex(0), Complex(0), Complex(1)});
    CHECK(e7.rows()[1] == std::array<Complex, 3>{Complex(-1), Complex(0), Complex(-1)});
    CHECK(e7.rows()[2] == std::array<Complex, 3>{Complex(0), Complex(-2), Complex(0)});

    ParameterSet a7;
    a7.values = {{"a0", 1.0}};
    dpv::BiquadMatrix m = dpv::builtin_matrix(EquationSpec(SurfaceType::A7, a7));
    CHECK(m.rows()[0] == std::array<Complex, 3>{Complex(0), Complex(-1), Complex(0)});
    CHECK(m.rows()[1] == std::array<Complex, 3>{Complex(1), Complex(0), Complex(0)});
    CHECK(m.rows()[2] == std::array<Complex, 3>{Complex(0), Complex(-1), Complex(1)});

    ParameterSet d4;
    d4.values = {{"a1", 0.0}, {"a2", 0.0}, {"a3", 0.0}, {"a4", 0.0}, {"s", 2.0}};
    dpv::BiquadMatrix md = dpv::builtin_matrix(EquationSpec(SurfaceType::D4, d4));
    CHECK(md.rows()[0] == std::array<Complex, 3>{Complex(1), Complex(-3), Complex(2)});
    CHECK(md.rows()[1] == std::array<Complex, 3>{Complex(0), Complex(0), Complex(0)});
    CHECK(md.rows()[2] == std::array<Complex, 3>{Complex(0), Complex(0), Complex(0)});

    ParameterSet zero;
    zero.values = {{"a1", 1.2}, {"b", 0.0}};
    CHECK_THROWS_AS(dpv::builtin_matrix(EquationSpec(SurfaceType::A6, zero)),
                    std::invalid_argument);
    CHECK_THROWS_AS(dpv::builtin_matrix(make_spec(SurfaceType::qPA2)), dpv::UnsupportedFamily);
}

TEST_CASE("exceptional charts evaluate as printed") {
    auto [f1, g1] = dpv::exceptional_chart(SurfaceType::A2star, {1.0, 2.0}, 0.0);
    CHECK(f1 == Complex(3.0, 0.0));
    CHECK(g1 == Complex(2.0, 0.0));

    auto [f2, g2] = dpv::exceptional_chart(SurfaceType::qPA2, {2.0, 3.0}, 0.0);
    CHECK(f2 == Complex(5.0, 0.0));
    CHECK(g2 == Complex(3.0, 0.0));

    auto [f3, g3] = dpv::exceptional_chart(SurfaceType::A1star, {1.0, 1.0}, 1.0);
    CHECK(f3 == Complex(0.0, 0.0));
    CHECK(g3 == Complex(1.0, 0.0));

    CHECK_THROWS_AS(dpv::exceptional_chart(SurfaceType::A1star, {1.0, -1.0}, 1.0),
                    dpv::ChartSingular);
    CHECK_THROWS_AS(dpv::exceptional_chart(SurfaceType::A1, {0.5, 2.0}, 1.2),
                    dpv::ChartSingular);
    CHECK_THROWS_AS(dpv::exceptional_chart(SurfaceType::A0star, {0.4, 0.7}, 0.0),
                    dpv::ChartSingular);
}

TEST_CASE("spec JSON round trip") {
    auto spec = make_spec(SurfaceType::qPA2);
    std::string text = dpv::spec_to_json(spec);
    EquationSpec back = dpv::spec_from_json(text);
    CHECK(back.surface == spec.surface);
    REQUIRE(back.params.values.size() == spec.params.values.size());
    for (std::size_t i = 0; i < spec.params.values.size(); ++i) {
        CHECK(back.params.values[i].first == spec.params.values[i].first);
        CHECK(back.params.values[i].second == spec.params.values[i].second);
    }
    CHECK(back.params.evolution.kind == dpv::EvolutionKind::builtin_qpa2);
    CHECK(dpv::spec_to_json(back) == text);
}

TEST_CASE("spec JSON accepts plain numbers and rejects junk") {
    EquationSpec spec = dpv::spec_from_json(
        R"({"surface": "E7", "params": {"a1": 2, "s": [1, 0.5]}})");
    CHECK(spec.params.at("a1") == Complex(2.0, 0.0));
    CHECK(spec.params.at("s") == Complex(1.0, 0.5));

    CHECK_THROWS_AS(dpv::spec_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(dpv::spec_from_json(R"({"params": {}})"), std::invalid_argument);
    CHECK_THROWS_AS(dpv::spec_from_json(R"({"surface": "Z9"})"), std::invalid_argument);
    CHECK_THROWS_AS(dpv::spec_from_json(R"({"surface": "E7", "params": {"a1": "x", "s": 1}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        dpv::spec_from_json(
            R"({"surface": "E7", "params": {"a1": 2, "s": 1}, "evolution": {"kind": "warp"}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(dpv::load_spec_file("/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("user_table evolution survives the JSON round trip") {
    ParameterSet ps;
    ps.values = {{"a1", 0.25}, {"a2", 0.5}, {"a3", 0.75}, {"s", 2.0}};
    ps.evolution.kind = dpv::EvolutionKind::user_table;
    ps.evolution.table["s"] = {Complex(2.0, 0.0), Complex(0.0, 0.0)};
    EquationSpec spec(SurfaceType::D5, ps);
    EquationSpec back = dpv::spec_from_json(dpv::spec_to_json(spec));
    CHECK(back.params.evolution.kind == dpv::EvolutionKind::user_table);
    REQUIRE(back.params.evolution.table.count("s") == 1);
    CHECK(back.params.evolution.table.at("s").scale == Complex(2.0, 0.0));
    ParameterSet moved = dpv::evolve_params(back.params);
    CHECK(moved.at("s") == Complex(4.0, 0.0));
}
