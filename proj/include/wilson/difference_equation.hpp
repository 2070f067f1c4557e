#ifndef WILSON_DIFFERENCE_EQUATION_HPP
#define WILSON_DIFFERENCE_EQUATION_HPP

#include <string>
#include <utility>
#include <vector>

#include "wilson/operators.hpp"
#include "wilson/rational.hpp"

namespace wilson {

// Linear Wilson difference equation a_n D^n y + ... + a_1 D y + a_0 y = 0
// with exact-rational polynomial coefficients (ascending in x).
struct WilsonDifferenceEquation {
    std::vector<std::vector<BigRational>> coeff_polys;   // index k holds a_k

    long order() const { return long(coeff_polys.size()) - 1; }
    // Degree of a_k, or -1 if identically zero.
    long degree(long k) const;
    Complex eval_coeff(long k, const Complex& x) const;

    static WilsonDifferenceEquation from_json_text(const std::string& text);
    std::string to_json_text() const;

    // The counterexample equation: a0 = 64x^3+32x^2+16x+5,
    // a1 = -16x(8x^2+4x+1), a2 = 4x(4x+1)^2.
    static WilsonDifferenceEquation example_counterexample();
};

// Newton polygon of the equation: points (k, deg a_{n-k} - (n-k)) for the k
// with a_{n-k} not identically zero; the finite edges of the hull of the
// associated unbounded regions are the positive-slope prefix of the upper
// concave chain. Edge slopes are exact rationals, sorted ascending.
struct NewtonPolygon {
    std::vector<std::pair<long, long>> points;
    std::vector<std::pair<long, long>> hull_vertices;   // left to right
    std::vector<BigRational> edge_slopes;               // sorted ascending
    std::vector<BigRational> admissible_slopes;         // slopes in (0, 1/3)

    std::string to_json_text() const;
};

NewtonPolygon newton_polygon(const WilsonDifferenceEquation& eq);

// max over points of |sum_k a_k(x) (D^k f)(x)| / (sum_k |a_k(x)||(D^k f)(x)| + tiny);
// the 0/0 guard returns 0.
Real equation_residual(const WilsonDifferenceEquation& eq, const FunctionHandle& f,
                       const std::vector<Complex>& points);

// Modified Bessel function of the first kind with complex order, by the
// defining series with reciprocal-gamma weights. `terms` caps the series;
// convergence is adaptive (3 consecutive terms below 2^{-bits/2} of the
// running scale). If tol_out is given it receives the reported tolerance
// (series tail estimate plus the gamma-approximation floor).
Complex bessel_i(const Complex& alpha, const Complex& z, long terms, long prec_bits,
                 Real* tol_out = nullptr);

// K_alpha(z) = pi/(2 sin(alpha pi)) [I_{-alpha}(z) - I_alpha(z)]; throws
// PreconditionError near integer orders (the removable-singularity limit is
// not needed for the orders +-2i sqrt(x) used here).
Complex bessel_k(const Complex& alpha, const Complex& z, long terms, long prec_bits);

struct EigenCheckReport {
    Real residual_f1;   // max over points of |D_W f - lambda f| / |f|
    Real residual_f2;
    std::vector<Real> per_point_f1;
    std::vector<Real> per_point_f2;
};

// Residuals of D_W y = lambda y for the two Bessel eigenfunction families.
EigenCheckReport eigen_check(const Complex& lambda, const std::vector<Complex>& points,
                             long prec_bits);

struct CounterexampleReport {
    Real residual_first;    // D_W f = f (1 + 1/(4x)) - g
    Real residual_second;   // the displayed D_W^2 identity
};

// f = 1/Gamma(2i sqrt x) + 1/Gamma(-2i sqrt x), g the companion function.
CounterexampleReport counterexample_identities(const std::vector<Complex>& points,
                                               long prec_bits);

struct PowerLawFit {
    double amplitude;   // L in  nu ~ L r^chi
    double exponent;    // chi
};

// Log-log least squares of nu against r.
PowerLawFit nu_power_law_fit(const std::vector<std::pair<double, double>>& r_nu_samples);

} // namespace wilson

#endif
