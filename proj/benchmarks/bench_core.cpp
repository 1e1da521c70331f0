#include <benchmark/benchmark.h>

#include "dpv/complexfn.hpp"
#include "dpv/hamiltonians.hpp"
#include "dpv/maps.hpp"
#include "dpv/model.hpp"
#include "dpv/verify.hpp"

namespace {

using dpv::Complex;
using dpv::EquationSpec;
using dpv::ParameterSet;
using dpv::SurfaceType;

ParameterSet params(std::initializer_list<std::pair<const char*, Complex>> vals) {
    ParameterSet ps;
    for (const auto& [name, v] : vals) ps.values.emplace_back(name, v);
    return ps;
}

EquationSpec e7_spec() {
    return {SurfaceType::E7, params({{"a1", 2.0}, {"s", 1.0}})};
}

EquationSpec d5_spec() {
    return {SurfaceType::D5, params({{"a1", 0.25}, {"a2", 0.5}, {"a3", 0.75}, {"s", 2.0}})};
}

EquationSpec a6_spec() {
    return {SurfaceType::A6, params({{"a1", 1.2}, {"b", 0.8}})};
}

EquationSpec d4_spec() {
    return {SurfaceType::D4,
            params({{"a1", 0.2}, {"a2", 0.3}, {"a3", 0.5}, {"a4", 0.7}, {"s", 1.5}})};
}

EquationSpec qpa2_spec() {
    ParameterSet ps = params({{"b1", {1.05, 0.02}},
                              {"b2", {0.93, -0.03}},
                              {"b3", {1.11, 0.04}},
                              {"b4", {0.97, 0.01}},
                              {"b5", {1.35, 0.05}},
                              {"b6", {0.88, -0.02}},
                              {"b7", {1.02, 0.03}},
                              {"b8", {0.95, -0.04}}});
    ps.evolution.kind = dpv::EvolutionKind::builtin_qpa2;
    return {SurfaceType::qPA2, std::move(ps)};
}

void bm_li2_series(benchmark::State& state) {
    const Complex z(0.2, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(dpv::li2(z));
}
BENCHMARK(bm_li2_series);

void bm_li2_reflection(benchmark::State& state) {
    const Complex z(0.8, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(dpv::li2(z));
}
BENCHMARK(bm_li2_reflection);

void bm_li2_inversion(benchmark::State& state) {
    const Complex z(3.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(dpv::li2(z));
}
BENCHMARK(bm_li2_inversion);

void bm_li2_log_series(benchmark::State& state) {
    const Complex z(-0.4, -0.55);
    for (auto _ : state) benchmark::DoNotOptimize(dpv::li2(z));
}
BENCHMARK(bm_li2_log_series);

void bm_step_biquadratic(benchmark::State& state) {
    const auto spec = e7_spec();
    const auto p = dpv::sample_regular_points(spec, 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(dpv::step(spec, p));
}
BENCHMARK(bm_step_biquadratic);

void bm_step_multiplicative(benchmark::State& state) {
    const auto spec = a6_spec();
    const auto p = dpv::sample_regular_points(spec, 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(dpv::step(spec, p));
}
BENCHMARK(bm_step_multiplicative);

void bm_step_mixed(benchmark::State& state) {
    const auto spec = d4_spec();
    const auto p = dpv::sample_regular_points(spec, 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(dpv::step(spec, p));
}
BENCHMARK(bm_step_mixed);

void bm_step_qpa2(benchmark::State& state) {
    const auto spec = qpa2_spec();
    const auto p = dpv::sample_regular_points(spec, 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(dpv::step(spec, p));
}
BENCHMARK(bm_step_qpa2);

void bm_eval_w_d5(benchmark::State& state) {
    const auto spec = d5_spec();
    const auto p = dpv::sample_regular_points(spec, 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(dpv::eval_W(spec, p.f, p.g));
}
BENCHMARK(bm_eval_w_d5);

void bm_eval_w_qpa2(benchmark::State& state) {
    const auto spec = qpa2_spec();
    const auto p = dpv::sample_regular_points(spec, 1, 1)[0];
    for (auto _ : state) benchmark::DoNotOptimize(dpv::eval_W(spec, p.f, p.g));
}
BENCHMARK(bm_eval_w_qpa2);

void bm_gradient_check(benchmark::State& state) {
    const auto spec = e7_spec();
    for (auto _ : state)
        benchmark::DoNotOptimize(dpv::run_check(spec, dpv::CheckKind::gradient, 10, 1));
}
BENCHMARK(bm_gradient_check);

}  // namespace

BENCHMARK_MAIN();
