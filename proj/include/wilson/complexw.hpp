#ifndef WILSON_COMPLEXW_HPP
#define WILSON_COMPLEXW_HPP

#include <cstdint>
#include <string>

#include "wilson/real.hpp"

namespace wilson {

// Step count on the node lattice x^{+(m)}.
using NodeIndex = std::int64_t;

// Complex value on a pair of Reals. Both components always share one
// precision; mixed-precision construction rounds to the smaller.
class Complex {
public:
    Complex() : re_(PrecisionPolicy::default_bits), im_(PrecisionPolicy::default_bits) {}

    explicit Complex(long prec_bits) : re_(prec_bits), im_(prec_bits) {}

    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
        const long p = std::min(re_.prec(), im_.prec());
        if (re_.prec() != p) re_ = re_.rounded_to(p);
        if (im_.prec() != p) im_ = im_.rounded_to(p);
    }

    Complex(double re, double im, long prec_bits) : re_(re, prec_bits), im_(im, prec_bits) {}

    explicit Complex(const Real& re) : re_(re), im_(Real(0L, re.prec())) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    long prec() const { return re_.prec(); }

    Complex rounded_to(long prec_bits) const {
        return Complex(re_.rounded_to(prec_bits), im_.rounded_to(prec_bits));
    }

    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    std::string to_string(int digits = 0) const {
        return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
    }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re_ * b.re_ + b.im_ * b.im_;
        return Complex((a.re_ * b.re_ + a.im_ * b.im_) / d,
                       (a.im_ * b.re_ - a.re_ * b.im_) / d);
    }
    friend Complex operator*(const Complex& a, const Real& s) { return Complex(a.re_ * s, a.im_ * s); }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Real& s) { return Complex(a.re_ / s, a.im_ / s); }
    friend Complex operator*(const Complex& a, long s) { return Complex(a.re_ * s, a.im_ * s); }
    friend Complex operator/(const Complex& a, long s) { return Complex(a.re_ / s, a.im_ / s); }
    Complex operator-() const { return Complex(-re_, -im_); }

    Complex& operator+=(const Complex& o) { *this = *this + o; return *this; }
    Complex& operator-=(const Complex& o) { *this = *this - o; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend Complex conj(const Complex& a) { return Complex(a.re_, -a.im_); }
    friend Real abs(const Complex& a) { return hypot(a.re_, a.im_); }
    friend Real arg(const Complex& a) { return atan2(a.im_, a.re_); }

    friend Complex exp(const Complex& a) {
        Real e = exp(a.re_);
        return Complex(e * cos(a.im_), e * sin(a.im_));
    }
    // Principal log: imaginary part in (-pi, pi].
    friend Complex log(const Complex& a) { return Complex(log(abs(a)), arg(a)); }
    friend Complex sin(const Complex& a) {
        return Complex(sin(a.re_) * cosh(a.im_), cos(a.re_) * sinh(a.im_));
    }
    friend Complex pow(const Complex& a, const Complex& b) { return exp(b * log(a)); }
    friend Complex pow(const Complex& a, long n) {
        Complex r(Real(1L, a.prec()), Real(0L, a.prec()));
        Complex base = a;
        bool inv = n < 0;
        unsigned long e = inv ? -(unsigned long)n : (unsigned long)n;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        if (inv) r = Complex(Real(1L, a.prec()), Real(0L, a.prec())) / r;
        return r;
    }

private:
    Real re_, im_;
};

inline Complex make_i(long prec_bits) { return Complex(0.0, 1.0, prec_bits); }

// Square root with arg(w) in (-pi/2, pi/2]: Re(w) > 0, or Re(w) = 0 with
// Im(w) >= 0. This is the branch every node and tau-basis formula consumes.
inline Complex sqrt_w(const Complex& x) {
    const long p = x.prec();
    if (x.is_zero()) return Complex(p);
    if (x.im().is_zero()) {
        if (x.re().sign() > 0) return Complex(sqrt(x.re()), Real(0L, p));
        return Complex(Real(0L, p), sqrt(-x.re()));   // negative real: +i*sqrt|x|
    }
    // t = sqrt((|x| + |Re x|)/2); pairs to give Re(w) > 0 for Im(x) != 0.
    Real m = abs(x);
    Real t = sqrt(ldexp2(m + abs(x.re()), -1));
    if (x.re().sign() >= 0) {
        return Complex(t, ldexp2(x.im() / t, -1));
    }
    Real u = ldexp2(abs(x.im()) / t, -1);
    return Complex(u, x.im().sign() >= 0 ? t : -t);
}

// x^{+(m)} by the closed form (sqrt_w(x) + m*i/2)^2. The recursion
// (x^{+(m-1)})^+ agrees except on parts of the branch cut; the closed form is
// what the series and interpolation formulas consume.
inline Complex node(const Complex& x, NodeIndex m) {
    Complex z = sqrt_w(x);
    Complex s(z.re(), z.im() + ldexp2(Real(double(m), x.prec()), -1));
    return s * s;
}

} // namespace wilson

#endif
