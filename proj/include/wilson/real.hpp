#ifndef WILSON_REAL_HPP
#define WILSON_REAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "wilson/errors.hpp"
#include "wilson/prec.hpp"

namespace wilson {

// Arbitrary-precision real backed by MPFR. Every value carries its own
// precision; the precision of a binary-op result is the minimum of the
// operand precisions. Scalars (long/double) are treated as exact and do not
// lower the result precision.
class Real {
public:
    Real() { mpfr_init2(v_, PrecisionPolicy::default_bits); mpfr_set_zero(v_, 1); }

    explicit Real(long prec_bits) {
        mpfr_init2(v_, clamp(prec_bits));
        mpfr_set_zero(v_, 1);
    }

    Real(double x, long prec_bits) {
        mpfr_init2(v_, clamp(prec_bits));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    Real(long x, long prec_bits) {
        mpfr_init2(v_, clamp(prec_bits));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }

    static Real from_string(std::string_view s, long prec_bits) {
        Real r(prec_bits);
        std::string buf(s);
        if (mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0)
            throw ParseError("Real: cannot parse \"" + buf + "\"");
        return r;
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }

    Real rounded_to(long prec_bits) const {
        Real r(prec_bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }

    // Shortest round-trip-ish decimal; digits chosen by the caller.
    std::string to_string(int digits = 0) const {
        if (digits <= 0) digits = int(double(prec()) * 0.30103) + 3;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    // -- arithmetic ----------------------------------------------------------

    friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }

    friend Real operator+(const Real& a, long b) { Real r(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, long b) { Real r(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, long b) { Real r(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, long b) { Real r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) { Real r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(long a, const Real& b) { Real r(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    Real& operator+=(const Real& o) { *this = *this + o; return *this; }
    Real& operator-=(const Real& o) { *this = *this - o; return *this; }
    Real& operator*=(const Real& o) { *this = *this * o; return *this; }
    Real& operator/=(const Real& o) { *this = *this / o; return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

    // -- elementary functions ------------------------------------------------

    friend Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log1p(const Real& a) { Real r(a.prec()); mpfr_log1p(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r(a.prec()); mpfr_sin(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r(a.prec()); mpfr_cos(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sinh(const Real& a) { Real r(a.prec()); mpfr_sinh(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real cosh(const Real& a) { Real r(a.prec()); mpfr_cosh(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real floor(const Real& a) { Real r(a.prec()); mpfr_floor(r.v_, a.v_); return r; }
    friend Real round(const Real& a) { Real r(a.prec()); mpfr_round(r.v_, a.v_); return r; }
    friend Real hypot(const Real& a, const Real& b) { return bin(mpfr_hypot, a, b); }
    friend Real atan2(const Real& y, const Real& x) { return bin(mpfr_atan2, y, x); }
    friend Real pow(const Real& a, const Real& b) { return bin(mpfr_pow, a, b); }
    friend Real pow(const Real& a, long b) { Real r(a.prec()); mpfr_pow_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real ldexp2(const Real& a, long e) { Real r(a.prec()); mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN); return r; }

    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

    static Real pi(long prec_bits) { Real r(prec_bits); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real ln2(long prec_bits) { Real r(prec_bits); mpfr_const_log2(r.v_, MPFR_RNDN); return r; }
    // 2^e at the given precision (exact).
    static Real pow2(long e, long prec_bits) {
        Real r(1.0, prec_bits);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    static long clamp(long p) { return std::max<long>(p, PrecisionPolicy::min_bits); }

    template <typename F>
    static Real bin(F op, const Real& a, const Real& b) {
        Real r(std::min(a.prec(), b.prec()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

} // namespace wilson

#endif
