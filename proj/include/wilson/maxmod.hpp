#ifndef WILSON_MAXMOD_HPP
#define WILSON_MAXMOD_HPP

#include <functional>

#include "wilson/complexw.hpp"

namespace wilson {

struct MaxModulusResult {
    Real value;    // estimated M(r; f)
    Complex argmax;
    long samples;
};

// max |f| over |x| = r: `samples` equally spaced points (theta = 0 included)
// followed by one golden-section refinement around the best arc. Throws
// EvaluationError (carrying the point) on a non-finite value.
MaxModulusResult max_modulus(const std::function<Complex(const Complex&)>& f,
                             const Real& r, long samples = 1024);

} // namespace wilson

#endif
