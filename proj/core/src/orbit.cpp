#include "dpv/orbit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dpv/errors.hpp"
#include "dpv/maps.hpp"

namespace dpv {

namespace {

constexpr double kOverflow = 1e100;

bool overflows(PhasePoint p) {
    return !(std::abs(p.f) <= kOverflow) || !(std::abs(p.g) <= kOverflow);
}

void append_row(std::string& out, int index, PhasePoint p) {
    char buf[128];
    // + 0.0 folds negative zeros so the text form is canonical
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", index, p.f.real() + 0.0,
                  p.f.imag() + 0.0, p.g.real() + 0.0, p.g.imag() + 0.0);
    out += buf;
}

double parse_double(const char*& it, const char* end, char delim) {
    double v = 0.0;
    auto res = std::from_chars(it, end, v);
    if (res.ec != std::errc())
        throw std::invalid_argument("points_from_csv: malformed number in row");
    it = res.ptr;
    if (delim != '\0') {
        if (it == end || *it != delim)
            throw std::invalid_argument("points_from_csv: missing field separator");
        ++it;
    }
    return v;
}

}  // namespace

const char* to_string(OrbitTermination t) {
    switch (t) {
    case OrbitTermination::completed: return "completed";
    case OrbitTermination::singularity: return "singularity";
    case OrbitTermination::overflow: return "overflow";
    }
    return "?";
}

OrbitRecord iterate(const EquationSpec& spec, PhasePoint start, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("iterate: n_steps must be at least 1");
    if (family_of(spec.surface) == Family::chart_only)
        throw UnsupportedFamily(std::string(to_string(spec.surface)) +
                                " carries only a chart, not a step");

    OrbitRecord record;
    record.steps.push_back({0, start, spec.params});
    if (overflows(start)) {
        record.terminated_by = OrbitTermination::overflow;
        return record;
    }
    PhasePoint cur = start;
    ParameterSet params = spec.params;
    for (int k = 1; k <= n_steps; ++k) {
        StepResult st;
        try {
            st = step(EquationSpec(spec.surface, params), cur);
        } catch (const SingularDenominator& e) {
            record.terminated_by = OrbitTermination::singularity;
            record.singular_info = SingularInfo{k - 1, e.name};
            return record;
        } catch (const Error& e) {
            record.terminated_by = OrbitTermination::singularity;
            record.singular_info = SingularInfo{k - 1, e.what()};
            return record;
        }
        if (overflows(st.next)) {
            record.terminated_by = OrbitTermination::overflow;
            return record;
        }
        cur = st.next;
        params = st.next_params;
        record.steps.push_back({k, cur, params});
    }
    return record;
}

std::string orbit_to_csv(const OrbitRecord& record) {
    std::string out = "step,f_re,f_im,g_re,g_im\n";
    for (const OrbitStep& s : record.steps) append_row(out, s.index, s.point);
    return out;
}

std::string points_to_csv(const std::vector<PhasePoint>& points) {
    std::string out = "step,f_re,f_im,g_re,g_im\n";
    int index = 0;
    for (PhasePoint p : points) append_row(out, index++, p);
    return out;
}

std::vector<PhasePoint> points_from_csv(const std::string& text) {
    const char* it = text.data();
    const char* end = it + text.size();
    const std::string header = "step,f_re,f_im,g_re,g_im\n";
    if (text.rfind(header, 0) != 0)
        throw std::invalid_argument("points_from_csv: unexpected header");
    it += header.size();
    std::vector<PhasePoint> points;
    while (it != end) {
        (void)parse_double(it, end, ',');  // step index
        double fr = parse_double(it, end, ',');
        double fi = parse_double(it, end, ',');
        double gr = parse_double(it, end, ',');
        double gi = parse_double(it, end, '\n');
        points.push_back({Complex(fr, fi), Complex(gr, gi)});
    }
    return points;
}

}  // namespace dpv
