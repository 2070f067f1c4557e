#ifndef WILSON_SERIES_HPP
#define WILSON_SERIES_HPP

#include <optional>
#include <vector>

#include "wilson/function_spec.hpp"

namespace wilson {

// tau_k(x; x0) = prod_{j=0}^{k-1} ((z0 + j i)^2 - x), z0 = sqrt_w(x0).
Complex tau_eval(long k, const Complex& x, const Complex& x0);

struct GateReport {
    std::vector<std::pair<double, double>> samples;   // (r, ln+ M / sqrt r)
    double gate_value = 0.0;                          // running max over the top decade
    double threshold = 0.0;                           // 2 ln 2
    bool pass = false;
};

// Advisory estimate of limsup ln+ M(r;f)/sqrt(r) against 2 ln 2 on a finite
// grid; a finite grid cannot certify a limsup.
GateReport growth_gate(const EntireFunctionSpec& f, const std::vector<double>& radii,
                       long prec_bits, long samples_per_circle = 256);

// Wilson series sum_k a_k tau_k(.; x0).
struct WilsonSeries {
    Complex x0;
    Complex z0;                    // sqrt_w(x0), cached
    std::vector<Complex> coeffs;   // held at the expansion precision
    PrecisionPolicy policy;        // reporting/threshold precision
    long computed_bits = 0;        // precision of the expansion arithmetic
    std::optional<GateReport> gate;
};

// Precision schedule for the alternating interpolation sums:
// max(policy, 64 + ceil(4 n log2 max(n,2))).
long expansion_bits(long n_max, long policy_bits);

struct ExpandOptions {
    bool run_gate = true;
    long gate_samples = 192;
    // Test hook: override the internal schedule (0 = use expansion_bits).
    long bits_override = 0;
};

// Coefficients a_0..a_{n_max} from the interpolation sum
//   a_n = (1/n!) sum_j (-1)^{n-j} binom(n,j)
//         f(x0^{+(2j)}) / ((-2 z0 i + j)_j (-2 z0 i + 2j + 1)_{n-j});
// at x0 = 0 the weights are exact rationals. A failed gate is recorded in the
// result, not fatal (out-of-gate expansions are computable but carry no
// representation guarantee).
WilsonSeries expand_wilson(const EntireFunctionSpec& f, const Complex& x0, long n_max,
                           const PrecisionPolicy& policy, const ExpandOptions& opts = {});

struct EvalResult {
    Complex value;
    Real tail_estimate;
};

// Partial sum with running tau products; stops once three consecutive term
// magnitudes drop below tail_tol * (running scale). Throws TruncationError if
// the coefficients run out first.
EvalResult eval_wilson(const WilsonSeries& s, const Complex& x, double tail_tol = 1e-30);

// Series of D_W f: base point x0^+, coefficients a'_{k-1} = -k a_k.
WilsonSeries dw_of_series(const WilsonSeries& s);

enum class ConvergenceVerdict { converges, diverges, inconclusive };

// Heuristic Cauchy-criterion probe at one test point. The underlying
// dichotomy: a Wilson series converges either nowhere outside the nodes
// x0^{+(2j)} or uniformly on every compact set, so one generic point is
// informative.
ConvergenceVerdict partial_sum_convergence_probe(const std::vector<Complex>& coeffs,
                                                 const Complex& x0, const Complex& test_point);

} // namespace wilson

#endif
