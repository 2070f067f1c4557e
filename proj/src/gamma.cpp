#include "wilson/gamma.hpp"

#include "wilson/errors.hpp"

namespace wilson {

namespace {

// Godfrey's coefficients for g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool is_nonpositive_integer(const Complex& z) {
    return z.im().is_zero() && z.re().is_integer() && z.re().sign() <= 0;
}

// Valid for Re(z) >= 1/2.
Complex log_gamma_core(const Complex& z) {
    const long p = z.prec();
    Complex w = z - Complex(Real(1L, p));
    Complex acc(Real(kLanczos[0], p));
    for (int k = 1; k < 9; ++k)
        acc += Complex(Real(kLanczos[k], p)) / (w + Complex(Real(double(k), p)));
    Complex t = w + Complex(Real(7.5, p));
    Real half_ln_2pi = ldexp2(log(ldexp2(Real::pi(p), 1)), -1);
    return Complex(half_ln_2pi) + (w + Complex(Real(0.5, p))) * log(t) - t + log(acc);
}

} // namespace

Complex log_gamma(const Complex& z) {
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer " + z.to_string(6));
    const long p = z.prec();
    if (z.re() >= 0.5) return log_gamma_core(z);
    // Reflection: log pi - log sin(pi z) - log Gamma(1 - z).
    Complex pi_z = Complex(Real::pi(p)) * z;
    return Complex(log(Real::pi(p))) - log(sin(pi_z)) - log_gamma_core(Complex(Real(1L, p)) - z);
}

Complex gamma(const Complex& z) { return exp(log_gamma(z)); }

Complex reciprocal_gamma(const Complex& z) {
    const long p = z.prec();
    if (is_nonpositive_integer(z)) return Complex(p);
    if (z.re() >= 0.5) return exp(-log_gamma_core(z));
    // 1/Gamma(z) = sin(pi z) * Gamma(1 - z) / pi, entire across the poles.
    Complex pi_z = Complex(Real::pi(p)) * z;
    return sin(pi_z) * exp(log_gamma_core(Complex(Real(1L, p)) - z)) / Real::pi(p);
}

} // namespace wilson
