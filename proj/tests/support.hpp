#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "dpv/model.hpp"

namespace testsupport {

inline double rel(dpv::Complex a, dpv::Complex b) {
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Parameter choices used across the suite: generic values away from the
// degenerate loci of every family.
inline dpv::EquationSpec make_spec(dpv::SurfaceType st) {
    using dpv::SurfaceType;
    dpv::ParameterSet ps;
    switch (st) {
    case SurfaceType::D5:
        ps.values = {{"a1", 0.25}, {"a2", 0.5}, {"a3", 0.75}, {"s", 2.0}};
        break;
    case SurfaceType::D6:
        ps.values = {{"a1", 0.3}, {"b1", 0.7}, {"s", 1.2}};
        break;
    case SurfaceType::D7:
        ps.values = {{"a1", 0.4}, {"s", 0.9}};
        break;
    case SurfaceType::E6:
        ps.values = {{"a1", 0.35}, {"a2", 0.65}, {"s", 1.1}};
        break;
    case SurfaceType::E7:
        ps.values = {{"a1", 2.0}, {"s", 1.0}};
        break;
    case SurfaceType::A3:
        ps.values = {{"a0", 1.1}, {"a1", 0.8}, {"a2", 1.3}, {"a3", 0.7}, {"a5", 1.4}};
        break;
    case SurfaceType::A4:
        ps.values = {{"a0", 0.9}, {"a2", 1.2}, {"a3", 0.8}, {"a4", 1.1}};
        break;
    case SurfaceType::A5:
        ps.values = {{"a0", 1.05}, {"a1", 0.85}, {"a2", 1.15}, {"b1", 0.95}};
        break;
    case SurfaceType::A6:
        ps.values = {{"a1", 1.2}, {"b", 0.8}};
        break;
    case SurfaceType::A7:
        ps.values = {{"a0", 1.3}};
        break;
    case SurfaceType::A7prime:
        ps.values = {{"a0", 3.0}};
        break;
    case SurfaceType::D4:
        ps.values = {{"a1", 0.2}, {"a2", 0.3}, {"a3", 0.5}, {"a4", 0.7}, {"s", 1.5}};
        break;
    case SurfaceType::qPA2:
        ps.values = {{"b1", {1.05, 0.02}}, {"b2", {0.93, -0.03}}, {"b3", {1.11, 0.04}},
                     {"b4", {0.97, 0.01}}, {"b5", {1.35, 0.05}}, {"b6", {0.88, -0.02}},
                     {"b7", {1.02, 0.03}}, {"b8", {0.95, -0.04}}};
        ps.evolution.kind = dpv::EvolutionKind::builtin_qpa2;
        break;
    case SurfaceType::A2star:
        break;
    default:
        ps.values = {{"r", 1.3}};
        break;
    }
    return dpv::EquationSpec(st, ps);
}

// The twelve types whose W is the closed single-valued term form.
inline const std::vector<dpv::SurfaceType>& w_term_types() {
    using dpv::SurfaceType;
    static const std::vector<dpv::SurfaceType> types = {
        SurfaceType::D5, SurfaceType::D6, SurfaceType::D7, SurfaceType::E6,
        SurfaceType::E7, SurfaceType::A3, SurfaceType::A4, SurfaceType::A5,
        SurfaceType::A6, SurfaceType::A7, SurfaceType::A7prime, SurfaceType::D4};
    return types;
}

}  // namespace testsupport
