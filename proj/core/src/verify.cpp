#include "dpv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dpv/errors.hpp"
#include "dpv/hamiltonians.hpp"
#include "dpv/maps.hpp"
#include "qpa2_common.hpp"

namespace dpv {

namespace {

constexpr double kSampleMargin = 1e-3;
constexpr Complex kTwoPiI{0.0, 2.0 * 3.141592653589793238462643383279502884};

double rel(Complex a, Complex b) {
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

double default_tolerance(CheckKind check, SurfaceType s) {
    bool q = (s == SurfaceType::qPA2);
    switch (check) {
    case CheckKind::gradient: return 1e-6;
    case CheckKind::map_consistency: return q ? 1e-7 : 1e-9;
    case CheckKind::symplectic: return q ? 1e-7 : 1e-8;
    case CheckKind::cross_matrix: return 1e-10;
    case CheckKind::hvi_identity: return 1e-10;
    case CheckKind::qpa2_relations: return 1e-9;
    }
    return 0.0;
}

// Distance of a W argument from the singular set it must avoid: the cut
// [1, inf) for Li2 arguments, the cut (-inf, 0] for log arguments.
double argument_distance(const WArgument& a) {
    if (a.is_li2) {
        if (a.value.real() >= 1.0) return std::abs(a.value.imag());
        return std::abs(a.value - Complex(1.0, 0.0));
    }
    if (a.value.real() <= 0.0) return std::abs(a.value.imag());
    return std::abs(a.value);
}

struct UniformDraw {
    std::mt19937_64 rng;
    explicit UniformDraw(std::uint64_t seed) : rng(seed) {}
    double uni() { return (rng() >> 11) * 0x1.0p-53; }
    Complex point() {
        double m = 0.1 + 1.9 * uni();
        double th = 2.0 * 3.141592653589793238462643383279502884 * uni();
        return Complex(m * std::cos(th), m * std::sin(th));
    }
};

bool chart_point_regular(const EquationSpec& spec, PhasePoint p) {
    Complex r = spec.params.has("r") ? spec.params.at("r") : Complex(0.0);
    switch (spec.surface) {
    case SurfaceType::A1star:
        if (std::abs(p.f + p.g) < kSampleMargin) return false;
        break;
    case SurfaceType::A1:
        if (std::abs(p.f * p.g - 1.0) < kSampleMargin) return false;
        break;
    case SurfaceType::A0star:
        if (std::abs(r) < kSampleMargin) return false;
        break;
    default:
        break;
    }
    try {
        exceptional_chart(spec.surface, p, r);
    } catch (const Error&) {
        return false;
    }
    return true;
}

bool steppable_point_regular(const EquationSpec& spec, PhasePoint p) {
    try {
        StepResult st = detail::step_with_threshold(spec, p, kSampleMargin);
        Complex gbar = st.next.g;
        std::vector<WArgument> args = w_arguments(spec, p.f, gbar);
        for (const WArgument& a : args)
            if (argument_distance(a) < kSampleMargin) return false;
        if (spec.surface == SurfaceType::qPA2) {
            // The closed-form W of qPA2 stays on its principal sheet only
            // while neither f nor the product f*phi winds past the negative
            // real axis, and the log-chart determinant needs fg - 1 away
            // from zero.
            if (std::abs(p.f * p.g - 1.0) < kSampleMargin) return false;
            constexpr double kWedge = 3.141592653589793238462643383279502884 - 0.2;
            if (std::abs(std::arg(p.f)) > kWedge) return false;
            Complex phi{};
            for (const WArgument& a : args)
                if (a.term == "log phi") phi = a.value;
            if (std::abs(std::arg(p.f) + std::arg(phi)) > kWedge) return false;
        }
        std::pair<Complex, Complex> mw = map_from_W(spec, p.f, gbar);
        if (!std::isfinite(mw.first.real()) || !std::isfinite(mw.first.imag()) ||
            !std::isfinite(mw.second.real()) || !std::isfinite(mw.second.imag()))
            return false;
    } catch (const Error&) {
        return false;
    }
    return true;
}

// Localization helper: the W argument nearest to its singular set at the
// given point, so a failure report can name the offending term.
std::string nearest_term_note(const EquationSpec& spec, PhasePoint p) {
    std::ostringstream os;
    os << "first failure at f=(" << p.f.real() << "," << p.f.imag() << "), g=(" << p.g.real()
       << "," << p.g.imag() << ")";
    try {
        Complex gbar = step(spec, p).next.g;
        std::vector<WArgument> args = w_arguments(spec, p.f, gbar);
        if (!args.empty()) {
            const WArgument* worst = &args.front();
            double best = argument_distance(args.front());
            for (const WArgument& a : args) {
                double d = argument_distance(a);
                if (d < best) {
                    best = d;
                    worst = &a;
                }
            }
            os << "; nearest singular argument \"" << worst->term << "\" at distance " << best;
        }
    } catch (const SingularDenominator& e) {
        os << "; singular denominator \"" << e.name << "\" (|den| = " << e.magnitude << ")";
    } catch (const LogSingular& e) {
        os << "; singular log term \"" << e.term << "\"";
    } catch (const Error& e) {
        os << "; " << e.what();
    }
    return os.str();
}

struct PointOutcome {
    double residual = 0.0;
    std::string note;  // set on exceptional evaluation
};

PointOutcome check_gradient(const EquationSpec& spec, PhasePoint p, const FdConfig& fd,
                            int& branch_hits) {
    Complex gbar = step(spec, p).next.g;
    auto [wf, wg] = grad_W(spec, p.f, gbar);
    Complex fdf =
        fd_derivative([&](Complex f) { return eval_W(spec, f, gbar).value; }, p.f, fd).value;
    Complex fdg =
        fd_derivative([&](Complex gb) { return eval_W(spec, p.f, gb).value; }, gbar, fd).value;
    if (spec.surface == SurfaceType::qPA2) {
        // The closed-form W is multivalued; its gbar-derivative is defined
        // modulo 2*pi*i*k/gbar, so reduce to the sheet the finite
        // difference landed on.
        long long k = std::llround(((wg - fdg) * gbar / kTwoPiI).real());
        if (k != 0) {
            wg -= kTwoPiI * static_cast<double>(k) / gbar;
            ++branch_hits;
        }
    }
    return {std::max(rel(wf, fdf), rel(wg, fdg)), {}};
}

PointOutcome check_map_consistency(const EquationSpec& spec, PhasePoint p) {
    StepResult st = step(spec, p);
    std::pair<Complex, Complex> mw = map_from_W(spec, p.f, st.next.g);
    return {std::max(rel(mw.first, p.g), rel(mw.second, st.next.f)), {}};
}

PointOutcome check_symplectic(const EquationSpec& spec, PhasePoint p, const FdConfig& cfg) {
    // The determinant subtracts products of Jacobian entries that can dwarf
    // the unit result, so stencil roundoff is amplified; a 5x wider stencil
    // rebalances roundoff against truncation while staying a factor 20
    // inside the sampler's singularity margin.
    FdConfig fd = cfg;
    fd.base_step = std::min(cfg.base_step * 5.0, 1e-2);
    if (spec.surface == SurfaceType::qPA2) {
        // Work with F = fg - 1, G = g directly and convert to the log chart
        // by the chain rule, so no branch cut can sit inside an FD stencil.
        Complex F0 = p.f * p.g - 1.0;
        Complex G0 = p.g;
        auto fwd = [&](Complex F, Complex G, int which) {
            Complex g = G;
            Complex f = (F + 1.0) / G;
            StepResult st = step(spec, {f, g});
            return which == 0 ? st.next.f * st.next.g - 1.0 : st.next.g;
        };
        Complex a = fd_derivative([&](Complex F) { return fwd(F, G0, 0); }, F0, fd).value;
        Complex b = fd_derivative([&](Complex G) { return fwd(F0, G, 0); }, G0, fd).value;
        Complex c = fd_derivative([&](Complex F) { return fwd(F, G0, 1); }, F0, fd).value;
        Complex d = fd_derivative([&](Complex G) { return fwd(F0, G, 1); }, G0, fd).value;
        StepResult st = step(spec, p);
        Complex Fb = st.next.f * st.next.g - 1.0;
        Complex Gb = st.next.g;
        Complex det = (a * d - b * c) * (F0 * G0) / (Fb * Gb);
        return {rel(det, 1.0), {}};
    }
    Complex a = fd_derivative([&](Complex f) { return step(spec, {f, p.g}).next.f; }, p.f, fd).value;
    Complex b = fd_derivative([&](Complex g) { return step(spec, {p.f, g}).next.f; }, p.g, fd).value;
    Complex c = fd_derivative([&](Complex f) { return step(spec, {f, p.g}).next.g; }, p.f, fd).value;
    Complex d = fd_derivative([&](Complex g) { return step(spec, {p.f, g}).next.g; }, p.g, fd).value;
    Complex det = a * d - b * c;
    StepResult st = step(spec, p);
    Complex want = 1.0;
    switch (family_of(spec.surface)) {
    case Family::multiplicative:
        want = st.next.f * st.next.g / (p.f * p.g);
        break;
    case Family::mixed:
        want = st.next.f / p.f;
        break;
    default:
        break;
    }
    return {rel(det, want), {}};
}

PointOutcome check_cross_matrix(const EquationSpec& spec, PhasePoint p, int& sign_hits,
                                int& offset_hits) {
    StepResult ct = step(spec, p);
    StepResult mt = matrix_step(spec, p);
    if (spec.surface == SurfaceType::A7prime) {
        double raw = rel(mt.next.g, ct.next.g);
        double flipped = rel(-mt.next.g, ct.next.g);
        if (flipped < raw) ++sign_hits;
        return {std::max(flipped, rel(mt.next.f, ct.next.f)), {}};
    }
    if (spec.surface == SurfaceType::D4) {
        Complex a3 = spec.params.at("a3");
        Complex offset = 2.0 * a3 * p.f / (1.0 - p.f);
        double raw = rel(mt.next.g, ct.next.g);
        double shifted = rel(mt.next.g + offset, ct.next.g);
        if (shifted < raw) ++offset_hits;
        // The matrix f-relation factors into the canonical fbar formula, so
        // at the matrix gbar it must reproduce that formula exactly.
        ParameterSet evolved = evolve_params(spec.params);
        Complex sb = evolved.at("s");
        Complex a1b = evolved.at("a1");
        Complex a2b = evolved.at("a2");
        Complex a4b = evolved.at("a4");
        Complex gm = mt.next.g;
        Complex den = p.f * (gm + a1b + a2b) * (gm + a2b);
        Complex fbar_formula = sb * gm * (gm - a4b) / den;
        return {std::max(shifted, rel(mt.next.f, fbar_formula)), {}};
    }
    return {std::max(rel(mt.next.g, ct.next.g), rel(mt.next.f, ct.next.f)), {}};
}

PointOutcome check_hvi_identity(const EquationSpec& spec, PhasePoint p) {
    BiquadMatrix M = builtin_matrix(spec);
    Complex lhs = eval_biquadratic_H(M, p.f, p.g) / p.f;
    Complex rhs = eval_continuous_H(ContinuousH::VI, spec.params, 0.0, p.f, p.g / p.f);
    return {rel(lhs, rhs), {}};
}

PointOutcome check_qpa2_relations(const EquationSpec& spec, PhasePoint p) {
    qpa2::Params par = qpa2::Params::from(spec.params);
    StepResult st = step(spec, p);
    Complex gbar = st.next.g;
    Complex fbar = st.next.f;
    Complex lhs1 = (p.f * p.g - 1.0) * (p.f * gbar - 1.0) / (par.q * par.b[6] * par.b[7]);
    Complex rhs1 = qpa2::P(par, p.f) / qpa2::S(par, p.f);
    Complex lhs2 = (p.f * gbar - 1.0) * (fbar * gbar - 1.0) / (par.q * par.b[4] * par.b[5]);
    Complex rhs2 = qpa2::Pg(par, gbar) / qpa2::Sg(par, gbar);
    Complex phi = qpa2::phi(par, p.f, gbar);
    double r = std::max({rel(lhs1, rhs1), rel(lhs2, rhs2), rel(phi, p.g)});
    return {r, {}};
}

VerificationReport run_check_impl(const EquationSpec& spec, CheckKind check, int n,
                                  std::uint64_t seed, const FdConfig& fd,
                                  std::optional<double> tol_override) {
    std::vector<CheckKind> applicable = applicable_checks(spec.surface);
    if (std::find(applicable.begin(), applicable.end(), check) == applicable.end())
        throw InapplicableCheck(std::string(to_string(check)) + " is not applicable to " +
                                to_string(spec.surface));
    if (n < 1) throw std::invalid_argument("run_check: n must be at least 1");

    VerificationReport report;
    report.surface = spec.surface;
    report.check = check;
    report.samples = n;
    report.tolerance = tol_override ? *tol_override : default_tolerance(check, spec.surface);

    std::vector<PhasePoint> points = sample_regular_points(spec, n, seed);
    int branch_hits = 0;
    int sign_hits = 0;
    int offset_hits = 0;
    bool localized = false;
    for (const PhasePoint& p : points) {
        PointOutcome out;
        try {
            switch (check) {
            case CheckKind::gradient:
                out = check_gradient(spec, p, fd, branch_hits);
                break;
            case CheckKind::map_consistency:
                out = check_map_consistency(spec, p);
                break;
            case CheckKind::symplectic:
                out = check_symplectic(spec, p, fd);
                break;
            case CheckKind::cross_matrix:
                out = check_cross_matrix(spec, p, sign_hits, offset_hits);
                break;
            case CheckKind::hvi_identity:
                out = check_hvi_identity(spec, p);
                break;
            case CheckKind::qpa2_relations:
                out = check_qpa2_relations(spec, p);
                break;
            }
        } catch (const SingularDenominator& e) {
            out.residual = std::numeric_limits<double>::max();
            out.note = std::string("singular denominator \"") + e.name + "\"";
        } catch (const Error& e) {
            out.residual = std::numeric_limits<double>::max();
            out.note = e.what();
        }
        report.max_residual = std::max(report.max_residual, out.residual);
        if (out.residual > report.tolerance) {
            report.failures.push_back({p, out.residual});
            if (!localized) {
                localized = true;
                std::string where = out.note.empty() ? nearest_term_note(spec, p)
                                                     : nearest_term_note(spec, p) + "; " + out.note;
                report.notes = where;
            }
        }
    }

    auto append_note = [&](const std::string& s) {
        if (!report.notes.empty()) report.notes += "; ";
        report.notes += s;
    };
    if (branch_hits > 0) {
        std::ostringstream os;
        os << "gbar-gradient compared modulo 2*pi*i*k/gbar (branch offset at " << branch_hits
           << " of " << n << " points)";
        append_note(os.str());
    }
    if (sign_hits > 0) {
        std::ostringstream os;
        os << "matrix g-relation returned -gbar relative to the canonical system at " << sign_hits
           << " of " << n << " points (documented sign discrepancy); compared after flipping";
        append_note(os.str());
    }
    if (offset_hits > 0) {
        std::ostringstream os;
        os << "matrix g-relation differs from the canonical system by 2*a3*f/(1 - f) at "
           << offset_hits << " of " << n
           << " points (biquadratic normalization); compared after shifting";
        append_note(os.str());
    }
    return report;
}

}  // namespace

const char* to_string(CheckKind k) {
    switch (k) {
    case CheckKind::gradient: return "gradient";
    case CheckKind::map_consistency: return "map_consistency";
    case CheckKind::symplectic: return "symplectic";
    case CheckKind::cross_matrix: return "cross_matrix";
    case CheckKind::hvi_identity: return "hvi_identity";
    case CheckKind::qpa2_relations: return "qpa2_relations";
    }
    return "?";
}

std::optional<CheckKind> check_from_string(std::string_view name) {
    for (CheckKind k : {CheckKind::gradient, CheckKind::map_consistency, CheckKind::symplectic,
                        CheckKind::cross_matrix, CheckKind::hvi_identity,
                        CheckKind::qpa2_relations})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

std::vector<CheckKind> applicable_checks(SurfaceType s) {
    switch (family_of(s)) {
    case Family::biquadratic:
    case Family::multiplicative:
        return {CheckKind::gradient, CheckKind::map_consistency, CheckKind::symplectic,
                CheckKind::cross_matrix};
    case Family::mixed:
        return {CheckKind::gradient, CheckKind::map_consistency, CheckKind::symplectic,
                CheckKind::cross_matrix, CheckKind::hvi_identity};
    case Family::qpa2:
        return {CheckKind::gradient, CheckKind::map_consistency, CheckKind::symplectic,
                CheckKind::qpa2_relations};
    case Family::chart_only:
        return {};
    }
    return {};
}

std::vector<PhasePoint> sample_regular_points(const EquationSpec& spec, int n,
                                              std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_regular_points: n must be at least 1");
    bool chart = (family_of(spec.surface) == Family::chart_only);
    UniformDraw draw(seed);
    std::vector<PhasePoint> points;
    points.reserve(static_cast<std::size_t>(n));
    long long budget = 1000LL * n;
    long long tried = 0;
    while (static_cast<int>(points.size()) < n) {
        if (tried >= budget)
            throw SamplingExhausted("no regular point found for " +
                                    std::string(to_string(spec.surface)) + " after " +
                                    std::to_string(tried) +
                                    " draws; parameters are likely degenerate");
        ++tried;
        PhasePoint p{draw.point(), draw.point()};
        bool ok = chart ? chart_point_regular(spec, p) : steppable_point_regular(spec, p);
        if (ok) points.push_back(p);
    }
    return points;
}

VerificationReport run_check(const EquationSpec& spec, CheckKind check, int n,
                             std::uint64_t seed) {
    return run_check_impl(spec, check, n, seed, FdConfig{}, std::nullopt);
}

VerificationReport run_check(const EquationSpec& spec, CheckKind check, int n, std::uint64_t seed,
                             const FdConfig& fd) {
    return run_check_impl(spec, check, n, seed, fd, std::nullopt);
}

namespace detail {

VerificationReport run_check_tol(const EquationSpec& spec, CheckKind check, int n,
                                 std::uint64_t seed, double tolerance, const FdConfig& fd) {
    return run_check_impl(spec, check, n, seed, fd, tolerance);
}

}  // namespace detail

namespace {

nlohmann::ordered_json report_json_object(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["surface"] = to_string(r.surface);
    j["check"] = to_string(r.check);
    j["samples"] = r.samples;
    j["max_residual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass();
    nlohmann::ordered_json fails = nlohmann::ordered_json::array();
    for (const auto& [p, res] : r.failures) {
        nlohmann::ordered_json f;
        f["f"] = {p.f.real(), p.f.imag()};
        f["g"] = {p.g.real(), p.g.imag()};
        f["residual"] = res;
        fails.push_back(f);
    }
    j["failures"] = fails;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
    return report_json_object(report).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const VerificationReport& r : reports) arr.push_back(report_json_object(r));
    return arr.dump(2) + "\n";
}

}  // namespace dpv
