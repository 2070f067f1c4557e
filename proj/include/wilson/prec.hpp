#ifndef WILSON_PREC_HPP
#define WILSON_PREC_HPP

#include "wilson/errors.hpp"

namespace wilson {

// Working precision in bits of significand. Threaded explicitly through every
// analytic computation; exact (integer/rational) code ignores it.
struct PrecisionPolicy {
    static constexpr long default_bits = 128;
    static constexpr long min_bits = 53;

    long bits = default_bits;

    PrecisionPolicy() = default;
    explicit PrecisionPolicy(long b) : bits(b) {
        if (b < min_bits) throw PreconditionError("PrecisionPolicy: bits must be >= 53");
    }
};

} // namespace wilson

#endif
