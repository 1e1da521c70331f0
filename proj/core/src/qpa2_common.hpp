#pragma once

// Internal helpers shared by the qPA2 pieces of the hamiltonians and maps
// translation units. Not installed.

#include <array>
#include <cmath>

#include "dpv/errors.hpp"
#include "dpv/model.hpp"

namespace dpv::qpa2 {

constexpr double kTau = 1e-12;

inline void check_den(Complex den, Complex num, const char* name) {
    if (std::abs(den) < kTau * (1.0 + std::abs(num)))
        throw SingularDenominator{name, std::abs(den)};
}

struct Params {
    std::array<Complex, 8> b;
    Complex q;

    static Params from(const ParameterSet& p) {
        Params out;
        for (int k = 0; k < 8; ++k)
            out.b[static_cast<std::size_t>(k)] = p.at("b" + std::to_string(k + 1));
        out.q = p.at("q");
        return out;
    }
    Complex bk(int k) const { return b[static_cast<std::size_t>(k - 1)]; }
};

inline Complex P(const Params& c, Complex f) {
    return (f - c.bk(1)) * (f - c.bk(2)) * (f - c.bk(3)) * (f - c.bk(4));
}

inline Complex dP(const Params& c, Complex f) {
    Complex sum = 0.0;
    for (int k = 1; k <= 4; ++k) {
        Complex prod = 1.0;
        for (int j = 1; j <= 4; ++j)
            if (j != k) prod *= f - c.bk(j);
        sum += prod;
    }
    return sum;
}

inline Complex S(const Params& c, Complex f) { return (f - c.bk(5)) * (f - c.bk(6)); }
inline Complex dS(const Params& c, Complex f) { return (f - c.bk(5)) + (f - c.bk(6)); }

inline Complex Pg(const Params& c, Complex g) {
    return (g - 1.0 / c.bk(1)) * (g - 1.0 / c.bk(2)) * (g - 1.0 / c.bk(3)) *
           (g - 1.0 / c.bk(4));
}

inline Complex Sg(const Params& c, Complex g) {
    return (g - c.q * c.bk(7)) * (g - c.q * c.bk(8));
}

// phi(f, y) solves (fg - 1)(f ybar - 1) = q b7 b8 P/S for the barred slot:
// ybar = phi(f, y). The same expression gives gbar from g and, read with
// gbar in the second slot, the value phi used inside the W-tilde algebra.
inline Complex phi(const Params& c, Complex f, Complex y) {
    const Complex num = c.q * c.bk(7) * c.bk(8) * P(c, f);
    const Complex den = (f * y - 1.0) * S(c, f);
    check_den(den, num, "(f g - 1)(f - b5)(f - b6)");
    check_den(f, 1.0, "f");
    return (1.0 + num / den) / f;
}

inline Complex psi(const Params& c, Complex f, Complex gbar) {
    const Complex num = c.q * c.bk(5) * c.bk(6) * Pg(c, gbar);
    const Complex den = (f * gbar - 1.0) * Sg(c, gbar);
    check_den(den, num, "(f gbar - 1)(gbar - q b7)(gbar - q b8)");
    check_den(gbar, 1.0, "gbar");
    return (1.0 + num / den) / gbar;
}

// gbar*psi - 1 without the cancellation of forming psi first.
inline Complex gbar_psi_minus_1(const Params& c, Complex f, Complex gbar) {
    const Complex num = c.q * c.bk(5) * c.bk(6) * Pg(c, gbar);
    const Complex den = (f * gbar - 1.0) * Sg(c, gbar);
    check_den(den, num, "(f gbar - 1)(gbar - q b7)(gbar - q b8)");
    return num / den;
}

inline Complex phi_f(const Params& c, Complex f, Complex gbar) {
    const Complex w = f * gbar - 1.0;
    const Complex s = S(c, f);
    check_den(w * s, P(c, f), "(f gbar - 1)(f - b5)(f - b6)");
    check_den(f, 1.0, "f");
    const Complex k = c.q * c.bk(7) * c.bk(8);
    return -phi(c, f, gbar) / f +
           (k / f) * (dP(c, f) / (w * s) - P(c, f) * dS(c, f) / (w * s * s) -
                      P(c, f) * gbar / (w * w * s));
}

inline Complex phi_gbar(const Params& c, Complex f, Complex gbar) {
    const Complex w = f * gbar - 1.0;
    const Complex s = S(c, f);
    check_den(w * s, P(c, f), "(f gbar - 1)(f - b5)(f - b6)");
    return -c.q * c.bk(7) * c.bk(8) * P(c, f) / (w * w * s);
}

// Argument of the second Li2 term of W-tilde:
// prod_{k<=4}(1 - f/b_k) / ((1 - f gbar) prod_{l=5,6}(1 - f/b_l)).
inline Complex A_arg(const Params& c, Complex f, Complex gbar) {
    Complex num = 1.0;
    for (int k = 1; k <= 4; ++k) num *= 1.0 - f / c.bk(k);
    const Complex den = (1.0 - f * gbar) * (1.0 - f / c.bk(5)) * (1.0 - f / c.bk(6));
    check_den(den, num, "(1 - f gbar)(1 - f/b5)(1 - f/b6)");
    return num / den;
}

// The bracketed sum of the printed g-display; equals -(phi + f phi_f)/(f phi - 1).
inline Complex sum_Sf(const Params& c, Complex f, Complex gbar) {
    Complex sum = -gbar / (1.0 - f * gbar);
    for (int k = 1; k <= 4; ++k) sum += (1.0 / c.bk(k)) / (1.0 - f / c.bk(k));
    for (int l = 5; l <= 6; ++l) sum -= (1.0 / c.bk(l)) / (1.0 - f / c.bk(l));
    return sum;
}

}  // namespace dpv::qpa2
