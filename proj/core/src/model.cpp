#include "dpv/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dpv {

namespace {

constexpr double kTau = 1e-12;  // singularity threshold |den| < kTau*(1+|num|)

// Relative agreement required of the stored q against the product of b's.
constexpr double kQTolerance = 1e-12;

Complex derived_q(const ParameterSet& p) {
    const Complex den = p.at("b1") * p.at("b2") * p.at("b3") * p.at("b4") *
                        p.at("b7") * p.at("b8");
    if (std::abs(den) == 0.0)
        throw ConstraintViolated("qPA2 parameters b1..b4, b7, b8 must be nonzero");
    return p.at("b5") * p.at("b6") / den;
}

void validate_q(const ParameterSet& p) {
    const Complex qd = derived_q(p);
    const Complex q = p.at("q");
    const double scale = std::max(std::abs(q), std::abs(qd));
    if (std::abs(q - qd) > kQTolerance * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "stored q = (" << q.real() << ", " << q.imag()
           << ") disagrees with b5*b6/(b1*b2*b3*b4*b7*b8) = (" << qd.real()
           << ", " << qd.imag() << ")";
        throw ConstraintViolated(os.str());
    }
}

}  // namespace

Family family_of(SurfaceType s) {
    switch (s) {
        case SurfaceType::D5:
        case SurfaceType::D6:
        case SurfaceType::D7:
        case SurfaceType::E6:
        case SurfaceType::E7:
            return Family::biquadratic;
        case SurfaceType::A3:
        case SurfaceType::A4:
        case SurfaceType::A5:
        case SurfaceType::A6:
        case SurfaceType::A7:
        case SurfaceType::A7prime:
            return Family::multiplicative;
        case SurfaceType::D4:
            return Family::mixed;
        case SurfaceType::qPA2:
            return Family::qpa2;
        case SurfaceType::A2star:
        case SurfaceType::A1star:
        case SurfaceType::A0starstar:
        case SurfaceType::A1:
        case SurfaceType::A0star:
            return Family::chart_only;
    }
    throw std::invalid_argument("family_of: unknown surface tag");
}

bool family_steps(Family f) { return f != Family::chart_only; }

std::string to_string(SurfaceType s) {
    switch (s) {
        case SurfaceType::D4: return "D4";
        case SurfaceType::D5: return "D5";
        case SurfaceType::D6: return "D6";
        case SurfaceType::D7: return "D7";
        case SurfaceType::E6: return "E6";
        case SurfaceType::E7: return "E7";
        case SurfaceType::A3: return "A3";
        case SurfaceType::A4: return "A4";
        case SurfaceType::A5: return "A5";
        case SurfaceType::A6: return "A6";
        case SurfaceType::A7: return "A7";
        case SurfaceType::A7prime: return "A7prime";
        case SurfaceType::qPA2: return "qPA2";
        case SurfaceType::A2star: return "A2star";
        case SurfaceType::A1star: return "A1star";
        case SurfaceType::A0starstar: return "A0starstar";
        case SurfaceType::A1: return "A1";
        case SurfaceType::A0star: return "A0star";
    }
    return "unknown";
}

std::string to_string(Family f) {
    switch (f) {
        case Family::biquadratic: return "biquadratic";
        case Family::multiplicative: return "multiplicative";
        case Family::mixed: return "mixed";
        case Family::qpa2: return "qpa2";
        case Family::chart_only: return "chart_only";
    }
    return "unknown";
}

std::optional<SurfaceType> surface_from_string(std::string_view name) {
    for (SurfaceType s : all_surface_types())
        if (to_string(s) == name) return s;
    return std::nullopt;
}

const std::vector<SurfaceType>& all_surface_types() {
    static const std::vector<SurfaceType> kAll = {
        SurfaceType::D4, SurfaceType::D5, SurfaceType::D6, SurfaceType::D7,
        SurfaceType::E6, SurfaceType::E7, SurfaceType::A3, SurfaceType::A4,
        SurfaceType::A5, SurfaceType::A6, SurfaceType::A7, SurfaceType::A7prime,
        SurfaceType::qPA2, SurfaceType::A2star, SurfaceType::A1star,
        SurfaceType::A0starstar, SurfaceType::A1, SurfaceType::A0star,
    };
    return kAll;
}

const std::vector<std::string>& required_params(SurfaceType s) {
    static const std::map<SurfaceType, std::vector<std::string>> kNames = {
        {SurfaceType::D4, {"a1", "a2", "a3", "a4", "s"}},
        {SurfaceType::D5, {"a1", "a2", "a3", "s"}},
        {SurfaceType::D6, {"a1", "b1", "s"}},
        {SurfaceType::D7, {"a1", "s"}},
        {SurfaceType::E6, {"a1", "a2", "s"}},
        {SurfaceType::E7, {"a1", "s"}},
        {SurfaceType::A3, {"a0", "a1", "a2", "a3", "a5"}},
        {SurfaceType::A4, {"a0", "a2", "a3", "a4"}},
        {SurfaceType::A5, {"a0", "a1", "a2", "b1"}},
        {SurfaceType::A6, {"a1", "b"}},
        {SurfaceType::A7, {"a0"}},
        {SurfaceType::A7prime, {"a0"}},
        {SurfaceType::qPA2, {"b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"}},
        {SurfaceType::A2star, {}},
        {SurfaceType::A1star, {"r"}},
        {SurfaceType::A0starstar, {"r"}},
        {SurfaceType::A1, {"r"}},
        {SurfaceType::A0star, {"r"}},
    };
    return kNames.at(s);
}

const Complex& ParameterSet::at(std::string_view name) const {
    for (const auto& [n, v] : values)
        if (n == name) return v;
    throw std::invalid_argument("unknown parameter: " + std::string(name));
}

bool ParameterSet::has(std::string_view name) const {
    return std::any_of(values.begin(), values.end(),
                       [&](const auto& nv) { return nv.first == name; });
}

void ParameterSet::set(std::string_view name, Complex v) {
    for (auto& [n, val] : values) {
        if (n == name) {
            val = v;
            return;
        }
    }
    values.emplace_back(std::string(name), v);
}

ParameterSet evolve_params(const ParameterSet& params) {
    ParameterSet out = params;
    switch (params.evolution.kind) {
        case EvolutionKind::frozen:
            break;
        case EvolutionKind::user_table:
            for (auto& [name, value] : out.values) {
                auto it = params.evolution.table.find(name);
                if (it != params.evolution.table.end())
                    value = it->second.scale * value + it->second.shift;
            }
            break;
        case EvolutionKind::builtin_qpa2: {
            if (!params.has("q"))
                throw ConstraintViolated("builtin_qpa2 evolution requires the stored q");
            const Complex q = params.at("q");
            for (const char* name : {"b5", "b6", "b7", "b8"})
                out.set(name, q * out.at(name));
            validate_q(out);
            break;
        }
    }
    return out;
}

BiquadMatrix BiquadMatrix::from_rows(std::array<Complex, 3> g2row,
                                     std::array<Complex, 3> g1row,
                                     std::array<Complex, 3> g0row) {
    BiquadMatrix M;
    for (int j = 0; j < 3; ++j) {
        M.at(2, 2 - j) = g2row[static_cast<std::size_t>(j)];
        M.at(1, 2 - j) = g1row[static_cast<std::size_t>(j)];
        M.at(0, 2 - j) = g0row[static_cast<std::size_t>(j)];
    }
    return M;
}

std::array<std::array<Complex, 3>, 3> BiquadMatrix::rows() const {
    return {{{at(2, 2), at(2, 1), at(2, 0)},
             {at(1, 2), at(1, 1), at(1, 0)},
             {at(0, 2), at(0, 1), at(0, 0)}}};
}

EquationSpec::EquationSpec(SurfaceType surface_, ParameterSet params_)
    : surface(surface_), params(std::move(params_)), family(family_of(surface_)) {
    const auto& names = required_params(surface);
    ParameterSet canonical;
    canonical.evolution = params.evolution;
    for (const auto& name : names) {
        if (!params.has(name))
            throw std::invalid_argument(to_string(surface) + " requires parameter " + name);
        canonical.values.emplace_back(name, params.at(name));
    }
    std::size_t expected = names.size();
    if (surface == SurfaceType::qPA2) {
        if (params.has("q")) {
            canonical.values.emplace_back("q", params.at("q"));
            ++expected;
        } else {
            canonical.values.emplace_back("q", derived_q(canonical));
        }
        validate_q(canonical);
    }
    if (params.values.size() != expected)
        throw std::invalid_argument(to_string(surface) + ": unexpected extra parameters");
    if (params.evolution.kind == EvolutionKind::builtin_qpa2 && surface != SurfaceType::qPA2)
        throw std::invalid_argument("builtin_qpa2 evolution is only valid for qPA2");
    params = std::move(canonical);
}

BiquadMatrix builtin_matrix(const EquationSpec& spec) {
    const ParameterSet& p = spec.params;
    const auto inv = [](Complex z, const char* what) {
        if (std::abs(z) == 0.0)
            throw std::invalid_argument(std::string("builtin_matrix: ") + what + " must be nonzero");
        return 1.0 / z;
    };
    switch (spec.surface) {
        case SurfaceType::D5: {
            const Complex a1 = p.at("a1"), a2 = p.at("a2"), a3 = p.at("a3"), s = p.at("s");
            return BiquadMatrix::from_rows({1.0, -1.0, 0.0},
                                           {s, -a1 - a3 - s, a1},
                                           {0.0, s * a2, 0.0});
        }
        case SurfaceType::D6: {
            const Complex a1 = p.at("a1"), b1 = p.at("b1"), s = p.at("s");
            return BiquadMatrix::from_rows({1.0, 0.0, 0.0},
                                           {1.0, -a1 - b1, -a1},
                                           {0.0, -s, 0.0});
        }
        case SurfaceType::D7: {
            const Complex a1 = p.at("a1"), s = p.at("s");
            return BiquadMatrix::from_rows({1.0, 0.0, 0.0},
                                           {0.0, a1, -1.0},
                                           {0.0, s, 0.0});
        }
        case SurfaceType::E6: {
            const Complex a1 = p.at("a1"), a2 = p.at("a2"), s = p.at("s");
            return BiquadMatrix::from_rows({0.0, 1.0, 0.0},
                                           {-1.0, -s, -a2},
                                           {0.0, -a1, 0.0});
        }
        case SurfaceType::E7: {
            const Complex a1 = p.at("a1"), s = p.at("s");
            return BiquadMatrix::from_rows({0.0, 0.0, 1.0},
                                           {-1.0, 0.0, -s},
                                           {0.0, -a1, 0.0});
        }
        case SurfaceType::A7: {
            const Complex a0 = p.at("a0");
            return BiquadMatrix::from_rows({0.0, -a0, 0.0},
                                           {1.0, 0.0, 0.0},
                                           {0.0, -1.0, 1.0});
        }
        case SurfaceType::A7prime: {
            const Complex a0 = p.at("a0");
            return BiquadMatrix::from_rows({1.0, -a0, 0.0},
                                           {0.0, 0.0, 0.0},
                                           {0.0, -1.0, 1.0});
        }
        case SurfaceType::A6: {
            const Complex a1 = p.at("a1"), bi = inv(p.at("b"), "b");
            return BiquadMatrix::from_rows({0.0, bi, 0.0},
                                           {1.0, 0.0, -bi},
                                           {0.0, -a1, a1});
        }
        case SurfaceType::A5: {
            const Complex a0 = p.at("a0"), a1i = inv(p.at("a1"), "a1");
            const Complex r = p.at("b1") * inv(p.at("a2"), "a2");
            return BiquadMatrix::from_rows({0.0, r, 0.0},
                                           {a0, 0.0, -r},
                                           {a1i, -1.0 - a1i, 1.0});
        }
        case SurfaceType::A4: {
            const Complex a0 = p.at("a0"), a3 = p.at("a3");
            const Complex a2i = inv(p.at("a2"), "a2"), a4i = inv(p.at("a4"), "a4");
            return BiquadMatrix::from_rows({0.0, 1.0, -1.0},
                                           {a0 * a2i, 0.0, 1.0 + a4i},
                                           {-a0 * a3 * a2i, a0 * a3 + a2i * a4i, -a4i});
        }
        case SurfaceType::A3: {
            const Complex a0 = p.at("a0"), a1 = p.at("a1"), a2 = p.at("a2"),
                          a3 = p.at("a3"), a5 = p.at("a5");
            const Complex w = inv(a1 * a2 * a2, "a1*a2^2");
            return BiquadMatrix::from_rows(
                {a0 * a5, -(1.0 + a0) * a5, a5},
                {-w * inv(a3, "a3") - a0 * a3 * a5, 0.0, -1.0 - a5},
                {w, -(1.0 + a1) * inv(a1 * a2, "a1*a2"), 1.0});
        }
        case SurfaceType::D4: {
            const Complex a1 = p.at("a1"), a2 = p.at("a2"), a3 = p.at("a3"),
                          a4 = p.at("a4"), s = p.at("s");
            return BiquadMatrix::from_rows(
                {1.0, -1.0 - s, s},
                {a1 + 2.0 * a2, -a1 - 2.0 * a2 + (s - 1.0) * a3 + s * a4, -s * a4},
                {a2 * (a1 + a2), 0.0, 0.0});
        }
        default:
            throw UnsupportedFamily("builtin_matrix is not defined for " + to_string(spec.surface));
    }
}

std::pair<Complex, Complex> exceptional_chart(SurfaceType surface, PhasePoint p, Complex r) {
    const Complex f = p.f, g = p.g;
    switch (surface) {
        case SurfaceType::A2star:
            return {f + g, g};
        case SurfaceType::A1star: {
            const Complex den = f + g;
            if (std::abs(den) < kTau * (1.0 + std::abs(2.0 * r)))
                throw ChartSingular("f + g");
            return {1.0 - 2.0 * r / den, g};
        }
        case SurfaceType::A0starstar: {
            const Complex d = f - g;
            const Complex r2 = r * r;
            return {d * d - 8.0 * r2 * (f + g) + 16.0 * r2 * r2, d};
        }
        case SurfaceType::qPA2:  // the A2 chart
            return {f * g - 1.0, g};
        case SurfaceType::A1: {
            const Complex den = f * g - 1.0;
            const Complex num = r * r - 1.0;
            if (std::abs(den) < kTau * (1.0 + std::abs(num)))
                throw ChartSingular("fg - 1");
            return {1.0 - num / den, g};
        }
        case SurfaceType::A0star: {
            if (std::abs(r) < kTau) throw ChartSingular("r");
            const Complex r2 = r * r, r2i = 1.0 / r2;
            return {(f + g) * (f + g) - (r2 + r2i) * f * g + r2 - r2i,
                    -f / r + r * g};
        }
        default:
            throw UnsupportedFamily("exceptional_chart is not defined for " + to_string(surface));
    }
}

namespace {

using nlohmann::ordered_json;

Complex complex_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw std::invalid_argument(where + ": complex values are [re, im] pairs");
}

ordered_json complex_to_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

}  // namespace

EquationSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("spec JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("surface") || !j["surface"].is_string())
        throw std::invalid_argument("spec JSON needs a \"surface\" string");
    const auto surface = surface_from_string(j["surface"].get<std::string>());
    if (!surface)
        throw std::invalid_argument("unknown surface tag: " + j["surface"].get<std::string>());

    ParameterSet params;
    if (j.contains("params")) {
        if (!j["params"].is_object())
            throw std::invalid_argument("\"params\" must be an object");
        for (const auto& [name, value] : j["params"].items())
            params.values.emplace_back(name, complex_from_json(value, "params." + name));
    }
    if (j.contains("evolution")) {
        const auto& ev = j["evolution"];
        if (!ev.is_object() || !ev.contains("kind") || !ev["kind"].is_string())
            throw std::invalid_argument("\"evolution\" needs a \"kind\" string");
        const std::string kind = ev["kind"].get<std::string>();
        if (kind == "frozen") {
            params.evolution.kind = EvolutionKind::frozen;
        } else if (kind == "builtin_qpa2") {
            params.evolution.kind = EvolutionKind::builtin_qpa2;
        } else if (kind == "user_table") {
            params.evolution.kind = EvolutionKind::user_table;
            if (ev.contains("table")) {
                if (!ev["table"].is_object())
                    throw std::invalid_argument("evolution.table must be an object");
                for (const auto& [name, upd] : ev["table"].items()) {
                    ParamUpdate u;
                    if (upd.contains("scale"))
                        u.scale = complex_from_json(upd["scale"], "table." + name + ".scale");
                    if (upd.contains("shift"))
                        u.shift = complex_from_json(upd["shift"], "table." + name + ".shift");
                    params.evolution.table.emplace(name, u);
                }
            }
        } else {
            throw std::invalid_argument("unknown evolution kind: " + kind);
        }
    }
    return EquationSpec(*surface, std::move(params));
}

std::string spec_to_json(const EquationSpec& spec) {
    ordered_json j;
    j["surface"] = to_string(spec.surface);
    ordered_json params = ordered_json::object();
    for (const auto& [name, value] : spec.params.values)
        params[name] = complex_to_json(value);
    j["params"] = params;
    ordered_json ev;
    switch (spec.params.evolution.kind) {
        case EvolutionKind::frozen: ev["kind"] = "frozen"; break;
        case EvolutionKind::builtin_qpa2: ev["kind"] = "builtin_qpa2"; break;
        case EvolutionKind::user_table: {
            ev["kind"] = "user_table";
            ordered_json table = ordered_json::object();
            for (const auto& [name, u] : spec.params.evolution.table) {
                table[name] = {{"scale", complex_to_json(u.scale)},
                               {"shift", complex_to_json(u.shift)}};
            }
            ev["table"] = table;
            break;
        }
    }
    j["evolution"] = ev;
    return j.dump(2) + "\n";
}

EquationSpec load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_json(buf.str());
}

}  // namespace dpv
