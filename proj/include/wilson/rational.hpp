#ifndef WILSON_RATIONAL_HPP
#define WILSON_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "wilson/errors.hpp"
#include "wilson/real.hpp"

namespace wilson {

using BigInt = mpz_class;
using BigRational = mpq_class;   // canonicalized: lowest terms, denominator > 0

// Ragged lower triangle: row n holds n+1 exact entries.
template <typename T>
struct TriangleTable {
    std::vector<std::vector<T>> rows;

    const T& at(long n, long k) const { return rows.at(size_t(n)).at(size_t(k)); }
    long row_count() const { return long(rows.size()); }
};

// Accepts "p/q", integers, and decimal strings ("-0.75", "1.5e-3").
BigRational parse_rational(std::string_view s);

Real to_real(const BigRational& q, long prec_bits);
Real to_real(const BigInt& z, long prec_bits);

std::string to_string(const BigRational& q);

} // namespace wilson

#endif
