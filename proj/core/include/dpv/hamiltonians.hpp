#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpv/model.hpp"

namespace dpv {

// Value of a discrete Hamiltonian W. branch_note names every Li2 term whose
// argument left the primary series disk, together with the functional
// equation the evaluator used there; absent when all arguments stayed inside.
struct WValue {
    Complex value;
    std::optional<std::string> branch_note;
};

// The closed-form W(f, gbar) of the given surface, principal branches
// throughout. Barred parameters are taken from evolve_params(spec.params).
// Throws LogSingular when a log or Li2 argument sits on a singular point.
WValue eval_W(const EquationSpec& spec, Complex f, Complex gbar);

// Analytically differentiated closed form (dW/df, dW/dgbar). No Li2 value
// survives differentiation, so this path is independent of the li2
// evaluator and can be checked against fd_derivative(eval_W).
std::pair<Complex, Complex> grad_W(const EquationSpec& spec, Complex f, Complex gbar);

// Family extraction rule applied to grad_W, returning (g, fbar):
//   biquadratic     g = dW/df               fbar = dW/dgbar
//   multiplicative  g = exp(f dW/df)        fbar = exp(gbar dW/dgbar)
//   mixed           g = f dW/df             fbar = exp(dW/dgbar)
//   qpa2            the printed displays in the (f, gbar) variables
std::pair<Complex, Complex> map_from_W(const EquationSpec& spec, Complex f, Complex gbar);

// Hamiltonians of the differential Painleve equations.
enum class ContinuousH { I, II, III_D6, III_D7, III_D8, IV, V, VI };

// Evaluates the named Hamiltonian H(params; t; q, p). VI reads its s from
// params (with ds/dt = s(s-1) left to the caller); III_D8 throws
// SingularDenominator at q = 0.
Complex eval_continuous_H(ContinuousH name, const ParameterSet& params, Complex t,
                          Complex q, Complex p);

// The biquadratic form (g^2, g, 1) M (f^2, f, 1)^T.
Complex eval_biquadratic_H(const BiquadMatrix& M, Complex f, Complex g);

// One log or Li2 argument of W at (f, gbar), named by its printed term. The
// verification sampler uses these to keep drawn points away from cuts.
struct WArgument {
    std::string term;
    Complex value;
    bool is_li2;
};

std::vector<WArgument> w_arguments(const EquationSpec& spec, Complex f, Complex gbar);

// Branch-perturbation probes for the exponentiated-map invariance property:
// w_log_slots counts the log occurrences in W, and grad_W_shifted returns
// the gradient with occurrence `slot` moved to the next branch (its value
// shifted by 2*pi*i). Only term-form types (not qPA2) carry slots.
std::size_t w_log_slots(const EquationSpec& spec);
std::pair<Complex, Complex> grad_W_shifted(const EquationSpec& spec, Complex f,
                                           Complex gbar, std::size_t slot);

}  // namespace dpv
