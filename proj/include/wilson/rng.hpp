#ifndef WILSON_RNG_HPP
#define WILSON_RNG_HPP

#include <cstdint>

#include "wilson/complexw.hpp"

namespace wilson {

// splitmix64: platform-independent deterministic stream for seeded test
// points and circle samples (std distributions are not stable across
// implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    long uniform_int(long lo, long hi) {  // inclusive bounds
        return lo + long(next_u64() % (std::uint64_t)(hi - lo + 1));
    }

    Complex complex_in_box(double half_side, long prec_bits) {
        return Complex(uniform(-half_side, half_side), uniform(-half_side, half_side), prec_bits);
    }

private:
    std::uint64_t state_;
};

} // namespace wilson

#endif
