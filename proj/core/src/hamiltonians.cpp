#include "dpv/hamiltonians.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qpa2_common.hpp"

namespace dpv {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const Complex kTwoPiI{0.0, 2.0 * kPi};
const Complex kIPi{0.0, kPi};

Complex plog_term(Complex u, const std::string& term) {
    if (std::abs(u) == 0.0) throw LogSingular(term);
    return principal_log(u);
}

Complex ipow(Complex z, int n, const char* coord) {
    if (n < 0) {
        if (std::abs(z) == 0.0) throw SingularDenominator{coord, 0.0};
        return 1.0 / ipow(z, -n, coord);
    }
    Complex r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

// dLi2(u)/du = -log(1-u)/u, removable at u = 0.
Complex li2_du(Complex u, const std::string& term) {
    if (std::abs(u) < 1e-4) {
        return 1.0 +
               u * (1.0 / 2.0 +
                    u * (1.0 / 3.0 + u * (1.0 / 4.0 + u * (1.0 / 5.0 + u / 6.0))));
    }
    if (std::abs(1.0 - u) == 0.0) throw LogSingular(term);
    return -principal_log(1.0 - u) / u;
}

// One additive term of a closed-form W. The closed forms use seven shapes:
//   mono        c * f^pf * gbar^pg
//   log_lin     c * log(alpha*x + beta)
//   log_sq      c * log(alpha*x)^2
//   log_log     c * log(f) * log(gbar)
//   li2_lin     c * Li2(alpha*x)
//   gbar_log_f  c * gbar * log(f)
//   x_log_x     c * (gbar + beta) * log(gbar + beta)
// where x is f or gbar as selected by on_f. coef_is_log marks coefficients
// that are themselves principal logs of parameter products; those carry a
// branch-perturbation slot like any other log occurrence.
struct Term {
    enum class Kind { mono, log_lin, log_sq, log_log, li2_lin, gbar_log_f, x_log_x };
    Kind kind;
    std::string name;
    Complex c;
    int pf = 0, pg = 0;
    bool on_f = true;
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    bool coef_is_log = false;
};

using Kind = Term::Kind;

Complex inv_param(Complex z, const std::string& what) {
    if (std::abs(z) == 0.0)
        throw std::invalid_argument("parameter " + what + " must be nonzero here");
    return 1.0 / z;
}

std::vector<Term> build_terms(const EquationSpec& spec) {
    const ParameterSet& cur = spec.params;
    const ParameterSet evo = evolve_params(spec.params);
    const auto P = [&](const char* n) { return cur.at(n); };
    const auto Pb = [&](const char* n) { return evo.at(n); };

    std::vector<Term> terms;
    const auto add = [&](Term t) {
        if (std::abs(t.c) != 0.0) terms.push_back(std::move(t));
    };
    const auto mono = [&](Complex c, int pf, int pg, std::string name,
                          bool coef_log = false) {
        Term t;
        t.kind = Kind::mono;
        t.c = c;
        t.pf = pf;
        t.pg = pg;
        t.name = std::move(name);
        t.coef_is_log = coef_log;
        add(std::move(t));
    };
    const auto log_lin = [&](Complex c, bool on_f, Complex alpha, Complex beta,
                             std::string name, bool coef_log = false) {
        Term t;
        t.kind = Kind::log_lin;
        t.c = c;
        t.on_f = on_f;
        t.alpha = alpha;
        t.beta = beta;
        t.name = std::move(name);
        t.coef_is_log = coef_log;
        add(std::move(t));
    };
    const auto log_sq = [&](Complex c, bool on_f, Complex gamma, std::string name) {
        Term t;
        t.kind = Kind::log_sq;
        t.c = c;
        t.on_f = on_f;
        t.alpha = gamma;
        t.name = std::move(name);
        add(std::move(t));
    };
    const auto li2_lin = [&](Complex c, bool on_f, Complex gamma, std::string name) {
        Term t;
        t.kind = Kind::li2_lin;
        t.c = c;
        t.on_f = on_f;
        t.alpha = gamma;
        t.name = std::move(name);
        add(std::move(t));
    };
    const auto log_log = [&]() {
        Term t;
        t.kind = Kind::log_log;
        t.c = -1.0;
        t.name = "log f log gbar";
        add(std::move(t));
    };
    const auto x_log_x = [&](Complex c, Complex beta, std::string name) {
        Term t;
        t.kind = Kind::x_log_x;
        t.c = c;
        t.beta = beta;
        t.name = std::move(name);
        add(std::move(t));
    };

    switch (spec.surface) {
        case SurfaceType::D5:
            mono(-1.0, 1, 1, "f gbar");
            mono(-P("s"), 1, 0, "s f");
            mono(1.0, 0, 1, "gbar");
            log_lin(P("a3"), true, 1.0, -1.0, "log(f - 1)");
            log_lin(P("a1"), true, 1.0, 0.0, "log f");
            log_lin(-Pb("a2"), false, 1.0, 0.0, "log gbar");
            log_lin(Pb("a1") + Pb("a2") + Pb("a3"), false, 1.0, Pb("s"), "log(gbar + s)");
            break;
        case SurfaceType::D6:
            mono(-1.0, 1, 1, "f gbar");
            mono(-1.0, 1, 0, "f");
            mono(-P("a1"), -1, 0, "a1/f");
            log_lin(P("a1") + P("b1"), true, 1.0, 0.0, "log f");
            log_lin(Pb("s"), false, 1.0, 0.0, "log gbar");
            log_lin(Pb("a1") + Pb("b1") - Pb("s"), false, 1.0, 1.0, "log(gbar + 1)");
            break;
        case SurfaceType::D7:
            mono(-1.0, 1, 1, "f gbar");
            mono(-1.0, -1, 0, "1/f");
            mono(Pb("s"), 0, -1, "s/gbar");
            log_lin(-P("a1"), true, 1.0, 0.0, "log f");
            log_lin(-Pb("a1"), false, 1.0, 0.0, "log gbar");
            break;
        case SurfaceType::E6:
            mono(-1.0, 1, 1, "f gbar");
            mono(0.5, 2, 0, "f^2/2");
            mono(P("s"), 1, 0, "s f");
            mono(0.5, 0, 2, "gbar^2/2");
            mono(-Pb("s"), 0, 1, "s gbar");
            log_lin(P("a2"), true, 1.0, 0.0, "log f");
            log_lin(-Pb("a1"), false, 1.0, 0.0, "log gbar");
            break;
        case SurfaceType::E7:
            mono(-1.0, 1, 1, "f gbar");
            mono(P("s"), 1, 0, "s f");
            mono(1.0 / 3.0, 3, 0, "f^3/3");
            log_lin(-Pb("a1"), false, 1.0, 0.0, "log gbar");
            break;
        case SurfaceType::A3:
            log_log();
            li2_lin(1.0, true, 1.0, "Li2(f)");
            li2_lin(1.0, true, P("a0"), "Li2(a0 f)");
            li2_lin(-1.0, true, inv_param(P("a2"), "a2"), "Li2(f/a2)");
            li2_lin(-1.0, true, inv_param(P("a1") * P("a2"), "a1 a2"), "Li2(f/(a1 a2))");
            li2_lin(-1.0, false, 1.0, "Li2(gbar)");
            li2_lin(1.0, false, inv_param(Pb("a3"), "a3"), "Li2(gbar/a3)");
            li2_lin(-1.0, false, Pb("a5"), "Li2(a5 gbar)");
            li2_lin(1.0, false,
                    Pb("a0") * Pb("a1") * Pb("a2") * Pb("a2") * Pb("a3") * Pb("a5"),
                    "Li2(a0 a1 a2^2 a3 a5 gbar)");
            log_lin(-principal_log(P("a5")), true, 1.0, 0.0, "log(a5) log f", true);
            log_lin(principal_log(Pb("a1") * Pb("a2") * Pb("a2")), false, 1.0, 0.0,
                    "log(a1 a2^2) log gbar", true);
            break;
        case SurfaceType::A4:
            log_log();
            li2_lin(1.0, true, 1.0, "Li2(f)");
            li2_lin(-1.0, true, inv_param(P("a2"), "a2"), "Li2(f/a2)");
            li2_lin(-1.0, true, P("a0") * P("a3") * P("a4"), "Li2(a0 a3 a4 f)");
            li2_lin(-1.0, false, 1.0, "Li2(gbar)");
            li2_lin(-1.0, false, Pb("a4"), "Li2(a4 gbar)");
            li2_lin(1.0, false, inv_param(Pb("a3"), "a3"), "Li2(gbar/a3)");
            log_lin(-principal_log(P("a4")), true, 1.0, 0.0, "log(a4) log f", true);
            log_lin(principal_log(Pb("a2") * inv_param(Pb("a0") * Pb("a3") * Pb("a4"),
                                                       "a0 a3 a4")),
                    false, 1.0, 0.0, "log(a2/(a0 a3 a4)) log gbar", true);
            break;
        case SurfaceType::A5:
            log_log();
            li2_lin(-1.0, true, 1.0, "Li2(f)");
            li2_lin(-1.0, true, inv_param(P("a1"), "a1"), "Li2(f/a1)");
            li2_lin(-1.0, false, Pb("b1") * inv_param(Pb("a2"), "a2"), "Li2(b1 gbar/a2)");
            li2_lin(1.0, false, -Pb("a0") * Pb("a1"), "Li2(-a0 a1 gbar)");
            log_sq(-0.5, true, P("b1") * inv_param(P("a2"), "a2"), "log^2(b1 f/a2)");
            log_lin(principal_log(Pb("a1")), false, 1.0, 0.0, "log(a1) log gbar", true);
            break;
        case SurfaceType::A6:
            log_log();
            li2_lin(-1.0, true, 1.0, "Li2(f)");
            li2_lin(-1.0, false, inv_param(Pb("a1") * Pb("b"), "a1 b"), "Li2(gbar/(a1 b))");
            log_sq(-0.5, true, inv_param(P("b"), "b"), "log^2(f/b)");
            log_sq(-0.5, false, 1.0, "log^2(gbar)");
            log_lin(principal_log(P("a1")), true, 1.0, 0.0, "log(a1) log f", true);
            log_lin(principal_log(Pb("a1")), false, 1.0, 0.0, "log(a1) log gbar", true);
            break;
        case SurfaceType::A7prime:
            log_log();
            li2_lin(-1.0, true, 1.0, "Li2(f)");
            li2_lin(1.0, true, inv_param(P("a0"), "a0"), "Li2(f/a0)");
            log_sq(-0.5, true, 1.0, "log^2(f)");
            log_sq(-1.0, false, 1.0, "log^2(gbar)");
            log_lin(-principal_log(P("a0")), true, 1.0, 0.0, "log(a0) log f", true);
            break;
        case SurfaceType::A7:
            log_log();
            li2_lin(-1.0, true, 1.0, "Li2(f)");
            log_sq(-0.5, true, -P("a0"), "log^2(-a0 f)");
            log_sq(-0.5, false, 1.0, "log^2(gbar)");
            break;
        case SurfaceType::D4: {
            Term t;
            t.kind = Kind::gbar_log_f;
            t.c = -1.0;
            t.name = "gbar log f";
            add(std::move(t));
            log_lin(P("a4"), true, 1.0, 0.0, "log f");
            log_lin(-P("a3"), true, -1.0, 1.0, "log(1 - f)");
            log_lin(-(P("a1") + 2.0 * P("a2") + P("a3") + P("a4")), true,
                    -inv_param(P("s"), "s"), 1.0, "log(1 - f/s)");
            x_log_x(1.0, 0.0, "gbar log gbar");
            mono(principal_log(Pb("s")), 0, 1, "gbar log s", true);
            x_log_x(-1.0, Pb("a1") + Pb("a2"), "(gbar + a1 + a2) log(gbar + a1 + a2)");
            x_log_x(-1.0, Pb("a2"), "(gbar + a2) log(gbar + a2)");
            x_log_x(1.0, -Pb("a4"), "(gbar - a4) log(gbar - a4)");
            break;
        }
        default:
            throw UnsupportedFamily("no closed-form W is attached to " +
                                    to_string(spec.surface));
    }
    return terms;
}

Complex term_value(const Term& t, Complex f, Complex gbar,
                   std::vector<std::string>* notes) {
    switch (t.kind) {
        case Kind::mono:
            return t.c * ipow(f, t.pf, "f") * ipow(gbar, t.pg, "gbar");
        case Kind::log_lin: {
            const Complex x = t.on_f ? f : gbar;
            return t.c * plog_term(t.alpha * x + t.beta, t.name);
        }
        case Kind::log_sq: {
            const Complex L = plog_term(t.alpha * (t.on_f ? f : gbar), t.name);
            return t.c * L * L;
        }
        case Kind::log_log:
            return t.c * plog_term(f, t.name) * plog_term(gbar, t.name);
        case Kind::li2_lin: {
            const Complex u = t.alpha * (t.on_f ? f : gbar);
            if (notes) {
                const Li2Region r = li2_region(u);
                if (r != Li2Region::series)
                    notes->push_back(t.name + ": " + to_string(r));
            }
            return t.c * li2(u);
        }
        case Kind::gbar_log_f:
            return t.c * gbar * plog_term(f, t.name);
        case Kind::x_log_x: {
            const Complex u = gbar + t.beta;
            return t.c * u * plog_term(u, t.name);
        }
    }
    throw std::logic_error("term_value: unhandled kind");
}

// Accumulates the term's (dW/df, dW/dgbar) into (df, dg).
void term_grad(const Term& t, Complex f, Complex gbar, Complex& df, Complex& dg) {
    switch (t.kind) {
        case Kind::mono:
            if (t.pf != 0)
                df += t.c * static_cast<double>(t.pf) * ipow(f, t.pf - 1, "f") *
                      ipow(gbar, t.pg, "gbar");
            if (t.pg != 0)
                dg += t.c * static_cast<double>(t.pg) * ipow(f, t.pf, "f") *
                      ipow(gbar, t.pg - 1, "gbar");
            return;
        case Kind::log_lin: {
            const Complex x = t.on_f ? f : gbar;
            const Complex u = t.alpha * x + t.beta;
            if (std::abs(u) == 0.0) throw LogSingular(t.name);
            (t.on_f ? df : dg) += t.c * t.alpha / u;
            return;
        }
        case Kind::log_sq: {
            const Complex x = t.on_f ? f : gbar;
            const Complex L = plog_term(t.alpha * x, t.name);
            (t.on_f ? df : dg) += 2.0 * t.c * L / x;
            return;
        }
        case Kind::log_log:
            df += t.c * plog_term(gbar, t.name) / f;
            dg += t.c * plog_term(f, t.name) / gbar;
            return;
        case Kind::li2_lin: {
            const Complex x = t.on_f ? f : gbar;
            (t.on_f ? df : dg) += t.c * t.alpha * li2_du(t.alpha * x, t.name);
            return;
        }
        case Kind::gbar_log_f:
            df += t.c * gbar / f;
            dg += t.c * plog_term(f, t.name);
            return;
        case Kind::x_log_x:
            dg += t.c * (plog_term(gbar + t.beta, t.name) + 1.0);
            return;
    }
}

// Number of log occurrences in the term, for branch-perturbation slots.
std::size_t term_slots(const Term& t) {
    switch (t.kind) {
        case Kind::mono: return t.coef_is_log ? 1 : 0;
        case Kind::log_lin: return t.coef_is_log ? 2 : 1;
        case Kind::log_sq: return 1;
        case Kind::log_log: return 2;
        case Kind::li2_lin: return 0;
        case Kind::gbar_log_f: return 1;
        case Kind::x_log_x: return 1;
    }
    return 0;
}

// Gradient change caused by moving the term's `slot`-th log to the next
// branch (adding 2*pi*i to that log's value).
void term_slot_delta(const Term& t, std::size_t slot, Complex f, Complex gbar,
                     Complex& df, Complex& dg) {
    switch (t.kind) {
        case Kind::mono:
            // c = log(kappa) -> c + 2*pi*i scales the monomial gradient.
            if (t.pf != 0)
                df += kTwoPiI * static_cast<double>(t.pf) * ipow(f, t.pf - 1, "f") *
                      ipow(gbar, t.pg, "gbar");
            if (t.pg != 0)
                dg += kTwoPiI * static_cast<double>(t.pg) * ipow(f, t.pf, "f") *
                      ipow(gbar, t.pg - 1, "gbar");
            return;
        case Kind::log_lin: {
            // slot 0: the printed log itself; W shifts by a constant.
            // slot 1: the log coefficient; the gradient gains 2*pi*i * dlog(u)/dx.
            if (slot == 1) {
                const Complex x = t.on_f ? f : gbar;
                const Complex u = t.alpha * x + t.beta;
                if (std::abs(u) == 0.0) throw LogSingular(t.name);
                (t.on_f ? df : dg) += kTwoPiI * t.alpha / u;
            }
            return;
        }
        case Kind::log_sq: {
            const Complex x = t.on_f ? f : gbar;
            (t.on_f ? df : dg) += 2.0 * t.c * kTwoPiI / x;
            return;
        }
        case Kind::log_log:
            if (slot == 0)
                dg += t.c * kTwoPiI / gbar;  // log f moved a branch
            else
                df += t.c * kTwoPiI / f;  // log gbar moved a branch
            return;
        case Kind::li2_lin:
            return;
        case Kind::gbar_log_f:
            dg += t.c * kTwoPiI;
            return;
        case Kind::x_log_x:
            dg += t.c * kTwoPiI;
            return;
    }
}

std::optional<std::string> join_notes(std::vector<std::string> notes) {
    if (notes.empty()) return std::nullopt;
    std::string out;
    for (std::size_t i = 0; i < notes.size(); ++i) {
        if (i) out += "; ";
        out += notes[i];
    }
    return out;
}

void require_w_family(const EquationSpec& spec) {
    if (spec.family == Family::chart_only)
        throw UnsupportedFamily("no W is attached to " + to_string(spec.surface));
}

// ---- q-P(A2) ----
//
// The W-tilde closed form. Relative to one printed transcription, three
// signs here (the Li2 of the big product A and the two log b_k log(1-f/b_k)
// groups) are fixed so that the closed form actually integrates the printed
// derivative displays; the discrepancy is pinned down in the test suite.

WValue eval_W_qpa2(const EquationSpec& spec, Complex f, Complex gbar) {
    const qpa2::Params c = qpa2::Params::from(spec.params);
    std::vector<std::string> notes;
    const auto li2_noted = [&](Complex u, const std::string& name) {
        const Li2Region r = li2_region(u);
        if (r != Li2Region::series) notes.push_back(name + ": " + to_string(r));
        return li2(u);
    };

    Complex w = li2_noted(f * gbar, "Li2(f gbar)");
    w -= li2_noted(qpa2::A_arg(c, f, gbar), "Li2(A)");
    w += plog_term(f, "log f") * plog_term(1.0 - f * gbar, "log(1 - f gbar)");
    for (int k = 1; k <= 4; ++k) {
        const std::string kk = std::to_string(k);
        const Complex u = 1.0 - f / c.bk(k);
        w += li2_noted(u, "Li2(1 - f/b" + kk + ")");
        w -= principal_log(c.bk(k)) * plog_term(u, "log(1 - f/b" + kk + ")");
    }
    for (int l = 5; l <= 6; ++l) {
        const std::string ll = std::to_string(l);
        const Complex u = 1.0 - f / c.bk(l);
        w -= li2_noted(u, "Li2(1 - f/b" + ll + ")");
        w += principal_log(c.bk(l)) * plog_term(u, "log(1 - f/b" + ll + ")");
    }
    for (int k = 1; k <= 4; ++k)
        w -= li2_noted(c.bk(k) * gbar, "Li2(b" + std::to_string(k) + " gbar)");
    for (int l = 7; l <= 8; ++l)
        w += li2_noted(gbar / (c.q * c.bk(l)), "Li2(gbar/(q b" + std::to_string(l) + "))");
    w += kIPi * plog_term(gbar, "log gbar");
    return {w, join_notes(std::move(notes))};
}

// The printed derivative displays, with phi and its partials spelled out.
std::pair<Complex, Complex> grad_W_qpa2(const EquationSpec& spec, Complex f,
                                        Complex gbar) {
    const qpa2::Params c = qpa2::Params::from(spec.params);
    const Complex phi = qpa2::phi(c, f, gbar);
    const Complex den = f * phi - 1.0;
    if (std::abs(den) == 0.0) throw LogSingular("f phi - 1");
    const Complex logphi = plog_term(phi, "log phi");
    const Complex wf = (phi + f * qpa2::phi_f(c, f, gbar)) / den * logphi;
    if (std::abs(gbar) == 0.0) throw SingularDenominator{"gbar", 0.0};
    const Complex wg =
        plog_term(qpa2::gbar_psi_minus_1(c, f, gbar), "log(gbar psi - 1)") / gbar +
        f * qpa2::phi_gbar(c, f, gbar) / den * logphi;
    return {wf, wg};
}

// The final printed system in (f, gbar) variables. The f-display is used
// literally; in the fbar-display the dW/df factor of the printed text is
// read as log(g) = -dW/df / S with S the f-display bracket, which is the
// reading consistent with the phi/psi derivation two displays earlier.
std::pair<Complex, Complex> map_from_W_qpa2(const EquationSpec& spec, Complex f,
                                            Complex gbar) {
    const auto [wf, wg] = grad_W_qpa2(spec, f, gbar);
    const qpa2::Params c = qpa2::Params::from(spec.params);
    const Complex S = qpa2::sum_Sf(c, f, gbar);
    if (std::abs(S) == 0.0) throw SingularDenominator{"g-display bracket", 0.0};
    const Complex log_g = -wf / S;
    const Complex w = 1.0 - f * gbar;
    if (std::abs(w) == 0.0) throw SingularDenominator{"1 - f gbar", 0.0};
    if (std::abs(gbar) == 0.0) throw SingularDenominator{"gbar", 0.0};
    const Complex fbar = (1.0 + std::exp(gbar * wg - f * gbar / w * log_g)) / gbar;
    return {std::exp(log_g), fbar};
}

}  // namespace

WValue eval_W(const EquationSpec& spec, Complex f, Complex gbar) {
    require_w_family(spec);
    if (spec.family == Family::qpa2) return eval_W_qpa2(spec, f, gbar);
    std::vector<std::string> notes;
    Complex w = 0.0;
    for (const Term& t : build_terms(spec)) w += term_value(t, f, gbar, &notes);
    return {w, join_notes(std::move(notes))};
}

std::pair<Complex, Complex> grad_W(const EquationSpec& spec, Complex f, Complex gbar) {
    require_w_family(spec);
    if (spec.family == Family::qpa2) return grad_W_qpa2(spec, f, gbar);
    Complex df = 0.0, dg = 0.0;
    for (const Term& t : build_terms(spec)) term_grad(t, f, gbar, df, dg);
    return {df, dg};
}

std::pair<Complex, Complex> map_from_W(const EquationSpec& spec, Complex f,
                                       Complex gbar) {
    require_w_family(spec);
    if (spec.family == Family::qpa2) return map_from_W_qpa2(spec, f, gbar);
    const auto [df, dg] = grad_W(spec, f, gbar);
    switch (spec.family) {
        case Family::biquadratic:
            return {df, dg};
        case Family::multiplicative:
            return {std::exp(f * df), std::exp(gbar * dg)};
        case Family::mixed:
            return {f * df, std::exp(dg)};
        default:
            break;
    }
    throw std::logic_error("map_from_W: unhandled family");
}

Complex eval_continuous_H(ContinuousH name, const ParameterSet& params, Complex t,
                          Complex q, Complex p) {
    switch (name) {
        case ContinuousH::I:
            return p * p - q * q * q - t * q;
        case ContinuousH::II:
            return p * (p - q * q - t) - params.at("a1") * q;
        case ContinuousH::III_D6: {
            const Complex a1 = params.at("a1"), b1 = params.at("b1");
            return p * (p + 1.0) * q * q - a1 * p * (q - 1.0) - b1 * p * q - t * q;
        }
        case ContinuousH::III_D7:
            return p * p * q * q + params.at("a1") * q * p + std::exp(t) * p + q;
        case ContinuousH::III_D8:
            if (std::abs(q) == 0.0) throw SingularDenominator{"q", 0.0};
            return p * p * q * q + q * p - q - std::exp(t) / q;
        case ContinuousH::IV:
            return p * q * (p - q - t) - params.at("a1") * p - params.at("a2") * q;
        case ContinuousH::V: {
            const Complex a1 = params.at("a1"), a2 = params.at("a2"),
                          a3 = params.at("a3");
            const Complex et = std::exp(t);
            return p * (p + et) * q * (q - 1.0) - a1 * p * (q - 1.0) - a3 * p * q +
                   a2 * et * q;
        }
        case ContinuousH::VI: {
            const Complex a1 = params.at("a1"), a2 = params.at("a2"),
                          a3 = params.at("a3"), a4 = params.at("a4"),
                          s = params.at("s");
            return q * (q - 1.0) * (q - s) * p * p +
                   ((a1 + 2.0 * a2) * q * (q - 1.0) + a3 * (s - 1.0) * q +
                    a4 * s * (q - 1.0)) *
                       p +
                   a2 * (a1 + a2) * q;
        }
    }
    throw std::invalid_argument("eval_continuous_H: unknown name");
}

Complex eval_biquadratic_H(const BiquadMatrix& M, Complex f, Complex g) {
    Complex sum = 0.0;
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            sum += M.at(i, j) * ipow(g, i, "g") * ipow(f, j, "f");
    return sum;
}

std::vector<WArgument> w_arguments(const EquationSpec& spec, Complex f, Complex gbar) {
    require_w_family(spec);
    std::vector<WArgument> args;
    if (spec.family == Family::qpa2) {
        const qpa2::Params c = qpa2::Params::from(spec.params);
        args.push_back({"Li2(f gbar)", f * gbar, true});
        args.push_back({"Li2(A)", qpa2::A_arg(c, f, gbar), true});
        args.push_back({"log f", f, false});
        args.push_back({"log(1 - f gbar)", 1.0 - f * gbar, false});
        for (int k = 1; k <= 6; ++k) {
            const Complex u = 1.0 - f / c.bk(k);
            const std::string kk = std::to_string(k);
            args.push_back({"Li2(1 - f/b" + kk + ")", u, true});
            args.push_back({"log(1 - f/b" + kk + ")", u, false});
        }
        for (int k = 1; k <= 4; ++k)
            args.push_back({"Li2(b" + std::to_string(k) + " gbar)", c.bk(k) * gbar, true});
        for (int l = 7; l <= 8; ++l)
            args.push_back(
                {"Li2(gbar/(q b" + std::to_string(l) + "))", gbar / (c.q * c.bk(l)), true});
        args.push_back({"log gbar", gbar, false});
        args.push_back({"log phi", qpa2::phi(c, f, gbar), false});
        args.push_back({"log(gbar psi - 1)", qpa2::gbar_psi_minus_1(c, f, gbar), false});
        return args;
    }
    for (const Term& t : build_terms(spec)) {
        switch (t.kind) {
            case Kind::mono:
                break;
            case Kind::log_lin:
                args.push_back({t.name, t.alpha * (t.on_f ? f : gbar) + t.beta, false});
                break;
            case Kind::log_sq:
                args.push_back({t.name, t.alpha * (t.on_f ? f : gbar), false});
                break;
            case Kind::log_log:
                args.push_back({"log f", f, false});
                args.push_back({"log gbar", gbar, false});
                break;
            case Kind::li2_lin:
                args.push_back({t.name, t.alpha * (t.on_f ? f : gbar), true});
                break;
            case Kind::gbar_log_f:
                args.push_back({"log f", f, false});
                break;
            case Kind::x_log_x:
                args.push_back({t.name, gbar + t.beta, false});
                break;
        }
    }
    return args;
}

std::size_t w_log_slots(const EquationSpec& spec) {
    require_w_family(spec);
    if (spec.family == Family::qpa2)
        throw UnsupportedFamily("branch slots are defined for the term-form W only");
    std::size_t n = 0;
    for (const Term& t : build_terms(spec)) n += term_slots(t);
    return n;
}

std::pair<Complex, Complex> grad_W_shifted(const EquationSpec& spec, Complex f,
                                           Complex gbar, std::size_t slot) {
    require_w_family(spec);
    if (spec.family == Family::qpa2)
        throw UnsupportedFamily("branch slots are defined for the term-form W only");
    auto [df, dg] = grad_W(spec, f, gbar);
    std::size_t base = 0;
    for (const Term& t : build_terms(spec)) {
        const std::size_t n = term_slots(t);
        if (slot < base + n) {
            term_slot_delta(t, slot - base, f, gbar, df, dg);
            return {df, dg};
        }
        base += n;
    }
    throw std::out_of_range("grad_W_shifted: slot " + std::to_string(slot) +
                            " of " + std::to_string(base));
}

}  // namespace dpv
