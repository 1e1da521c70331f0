#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpv/model.hpp"

namespace dpv {

enum class OrbitTermination { completed, singularity, overflow };

const char* to_string(OrbitTermination t);

struct OrbitStep {
    int index = 0;
    PhasePoint point;
    ParameterSet params;  // parameter values in force at this point
};

struct SingularInfo {
    int step_index = 0;       // index of the last regular point
    std::string denominator;  // which denominator (or log term) vanished
};

struct OrbitRecord {
    std::vector<OrbitStep> steps;  // indices contiguous from 0
    OrbitTermination terminated_by = OrbitTermination::completed;
    std::optional<SingularInfo> singular_info;
};

// Applies the family step n_steps times, evolving parameters each step.
// A singular step or a coordinate beyond 1e100 ends the record at the last
// regular point instead of escaping as an exception. Requires n_steps >= 1
// and a steppable (not chart-only) surface.
OrbitRecord iterate(const EquationSpec& spec, PhasePoint start, int n_steps);

// CSV with header step,f_re,f_im,g_re,g_im and 17 significant digits, enough
// for exact double round trips.
std::string orbit_to_csv(const OrbitRecord& record);
std::string points_to_csv(const std::vector<PhasePoint>& points);
std::vector<PhasePoint> points_from_csv(const std::string& text);

}  // namespace dpv
