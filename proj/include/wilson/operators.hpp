#ifndef WILSON_OPERATORS_HPP
#define WILSON_OPERATORS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wilson/complexw.hpp"
#include "wilson/prec.hpp"

namespace wilson {

// A black-box complex function for the operator layer. eval must be
// deterministic and finite on its declared domain.
struct FunctionHandle {
    std::function<Complex(const Complex&)> eval;
    std::string label;
    PrecisionPolicy prec{};
};

enum class WOp { D, A };

// Value of (ops.back() o ... o ops.front() f)(x): ops[0] is applied first
// (innermost). The whole word is evaluated on one node pyramid
// p_m = (sqrt_w(x) + m i/2)^2, which equals operator composition because each
// single application is branch-independent. Throws DegenerateNodeError when a
// divided-difference denominator collapses.
Complex apply_ops(const FunctionHandle& f, const Complex& x, std::span<const WOp> ops);

// (A_W f)(x) = (f(x^+) + f(x^-))/2.
Complex apply_aw(const FunctionHandle& f, const Complex& x);

// (D_W f)(x) = (f(x^+) - f(x^-))/(x^+ - x^-); near the origin the limit
// f'(-1/4) is taken with a 5-point central stencil of step 2^{-bits/3}.
Complex apply_dw(const FunctionHandle& f, const Complex& x);

// n-fold D_W with exact weight sharing on the pyramid; n = 0 is the identity.
Complex apply_dw_iterated(const FunctionHandle& f, const Complex& x, long n);

// D_W^k f(x) for all k = 0..n_max, sharing the function evaluations.
std::vector<Complex> apply_dw_all(const FunctionHandle& f, const Complex& x, long n_max);

// Cooper's interpolation form:
//   (D_W^n f)(x0) = (-1)^n sum_j binom(n,j) f(x0^{+(2j-n)})
//                   / ((-2 z0 i - n + j)_j (2 z0 i - j)_{n-j}).
// Throws DegenerateNodeError when a Pochhammer factor vanishes (node
// collision); callers fall back to apply_dw_iterated.
Complex cooper_dw_n(const FunctionHandle& f, const Complex& x0, long n);

// Right-hand side of the Leibniz rule:
//   D^n(fg) = sum_k C(n,k) sum_j binom(n-k,j) A^{n-k-j}D^{j+k} f . A^j D^{n-j} g.
Complex leibniz_dw_n(const FunctionHandle& f, const FunctionHandle& g,
                     const Complex& x, long n);

// (D_W f/g)(x) = (D_W f A_W g - A_W f D_W g)/(g(x^+) g(x^-)).
Complex quotient_dw(const FunctionHandle& f, const FunctionHandle& g, const Complex& x);

// (A_W D_W - D_W A_W - 1/2 D_W^2) f (x); zero up to rounding for any f.
Complex commutator_residual(const FunctionHandle& f, const Complex& x);

} // namespace wilson

#endif
