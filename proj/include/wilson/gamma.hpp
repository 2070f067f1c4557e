#ifndef WILSON_GAMMA_HPP
#define WILSON_GAMMA_HPP

#include "wilson/complexw.hpp"

namespace wilson {

// Principal-branch log Gamma via a Lanczos rational approximation (g = 7,
// 9 coefficients) with the reflection formula for Re(z) < 1/2. Relative
// accuracy is ~1e-13 independent of the working precision; that is all the
// Bessel series and the reciprocal-gamma counterexample need.
Complex log_gamma(const Complex& z);

// exp(log_gamma(z)).
Complex gamma(const Complex& z);

// Entire reciprocal 1/Gamma; exactly 0 at non-positive integers.
Complex reciprocal_gamma(const Complex& z);

} // namespace wilson

#endif
