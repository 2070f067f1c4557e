#include "wilson/maxmod.hpp"

#include "wilson/errors.hpp"

namespace wilson {

namespace {

Real modulus_at(const std::function<Complex(const Complex&)>& f,
                const Real& r, const Real& theta, Complex* point_out) {
    Complex x(r * cos(theta), r * sin(theta));
    Complex y = f(x);
    if (!y.is_finite())
        throw EvaluationError("max_modulus: non-finite value at " + x.to_string(8));
    if (point_out) *point_out = x;
    return abs(y);
}

} // namespace

MaxModulusResult max_modulus(const std::function<Complex(const Complex&)>& f,
                             const Real& r, long samples) {
    if (samples < 8) throw PreconditionError("max_modulus: samples must be >= 8");
    const long p = r.prec();
    const Real two_pi = ldexp2(Real::pi(p), 1);

    Real best_val(-1.0, p);
    Real best_theta(0L, p);
    Complex best_pt(p);
    for (long i = 0; i < samples; ++i) {
        Real theta = two_pi * Real(double(i), p) / Real(double(samples), p);
        Complex pt(p);
        Real m = modulus_at(f, r, theta, &pt);
        if (m > best_val) { best_val = m; best_theta = theta; best_pt = pt; }
    }

    // Golden-section pass on the arc around the best sample.
    const Real gr = ldexp2(sqrt(Real(5.0, p)) - 1, -1);   // 0.618...
    Real a = best_theta - two_pi / Real(double(samples), p);
    Real b = best_theta + two_pi / Real(double(samples), p);
    Real c = b - gr * (b - a);
    Real d = a + gr * (b - a);
    Complex pc(p), pd(p);
    Real fc = modulus_at(f, r, c, &pc);
    Real fd = modulus_at(f, r, d, &pd);
    for (int it = 0; it < 80; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc; pd = pc;
            c = b - gr * (b - a);
            fc = modulus_at(f, r, c, &pc);
        } else {
            a = c; c = d; fc = fd; pc = pd;
            d = a + gr * (b - a);
            fd = modulus_at(f, r, d, &pd);
        }
    }
    if (fc > best_val) { best_val = fc; best_pt = pc; }
    if (fd > best_val) { best_val = fd; best_pt = pd; }

    return MaxModulusResult{best_val, best_pt, samples};
}

} // namespace wilson
