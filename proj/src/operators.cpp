#include "wilson/operators.hpp"

#include <map>

#include "wilson/combinatorics.hpp"
#include "wilson/errors.hpp"

namespace wilson {

namespace {

Complex eval_checked(const FunctionHandle& f, const Complex& x) {
    Complex y = f.eval(x);
    if (!y.is_finite())
        throw EvaluationError("operator: non-finite value of " +
                              (f.label.empty() ? std::string("f") : f.label) +
                              " at " + x.to_string(8));
    return y;
}

// f'(-1/4) by a 5-point central stencil; used for (D_W f)(0).
Complex derivative_at_quarter(const FunctionHandle& f, long bits) {
    Real h = Real::pow2(-bits / 3, bits);
    Complex c(-0.25, 0.0, bits);
    Complex hh(h, Real(0L, bits));
    Complex f1 = eval_checked(f, c - hh * 2L);
    Complex f2 = eval_checked(f, c - hh);
    Complex f3 = eval_checked(f, c + hh);
    Complex f4 = eval_checked(f, c + hh * 2L);
    Complex num = f1 - f2 * 8L + f3 * 8L - f4;
    return num / (h * 12L);
}

} // namespace

Complex apply_ops(const FunctionHandle& f, const Complex& x, std::span<const WOp> ops) {
    const long bits = std::min<long>(x.prec(), f.prec.bits);
    const long n = long(ops.size());
    if (n == 0) return eval_checked(f, x.rounded_to(bits));

    Complex xb = x.rounded_to(bits);
    Complex z = sqrt_w(xb);
    const Real tiny = Real::pow2(-bits / 2, bits);

    auto z_at = [&](long m) {
        return Complex(z.re(), z.im() + ldexp2(Real(double(m), bits), -1));
    };

    // level 0: f on the pyramid base, indices m = -n..n with parity of n
    std::map<long, Complex> vals;
    for (long m = -n; m <= n; m += 2) {
        Complex zm = z_at(m);
        vals.emplace(m, eval_checked(f, zm * zm));
    }
    for (long lev = 1; lev <= n; ++lev) {
        const long extent = n - lev;
        std::map<long, Complex> next;
        for (long m = -extent; m <= extent; m += 2) {
            const Complex& up = vals.at(m + 1);
            const Complex& dn = vals.at(m - 1);
            if (ops[size_t(lev - 1)] == WOp::A) {
                next.emplace(m, (up + dn) / 2L);
            } else {
                Complex zm = z_at(m);
                if (abs(zm) < tiny)
                    throw DegenerateNodeError("apply_ops: lattice denominator collapse at index " +
                                              std::to_string(m));
                Complex denom = Complex(-ldexp2(zm.im(), 1), ldexp2(zm.re(), 1));   // 2 i z_m
                next.emplace(m, (up - dn) / denom);
            }
        }
        vals = std::move(next);
    }
    return vals.at(0);
}

Complex apply_aw(const FunctionHandle& f, const Complex& x) {
    const WOp ops[1] = {WOp::A};
    return apply_ops(f, x, ops);
}

Complex apply_dw(const FunctionHandle& f, const Complex& x) {
    const long bits = std::min<long>(x.prec(), f.prec.bits);
    if (abs(x) < Real::pow2(-bits / 2, bits))
        return derivative_at_quarter(f, bits);
    const WOp ops[1] = {WOp::D};
    return apply_ops(f, x, ops);
}

Complex apply_dw_iterated(const FunctionHandle& f, const Complex& x, long n) {
    if (n < 0) throw PreconditionError("apply_dw_iterated: n must be >= 0");
    const long bits = std::min<long>(x.prec(), f.prec.bits);
    if (n == 0) return f.eval(x.rounded_to(bits));
    if (n == 1) return apply_dw(f, x);
    std::vector<WOp> ops(size_t(n), WOp::D);
    return apply_ops(f, x, ops);
}

std::vector<Complex> apply_dw_all(const FunctionHandle& f, const Complex& x, long n_max) {
    const long bits = std::min<long>(x.prec(), f.prec.bits);
    Complex xb = x.rounded_to(bits);
    // Share the function values: wrap f with a pyramid-base cache keyed by
    // the exact node value.
    std::map<std::string, Complex> cache;
    FunctionHandle cached{
        [&](const Complex& p) {
            std::string key = p.re().to_string() + "|" + p.im().to_string();
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            Complex v = f.eval(p);
            cache.emplace(std::move(key), v);
            return v;
        },
        f.label, f.prec};
    std::vector<Complex> out;
    out.reserve(size_t(n_max) + 1);
    for (long k = 0; k <= n_max; ++k) out.push_back(apply_dw_iterated(cached, xb, k));
    return out;
}

Complex cooper_dw_n(const FunctionHandle& f, const Complex& x0, long n) {
    if (n < 0) throw PreconditionError("cooper_dw_n: n must be >= 0");
    const long bits = std::min<long>(x0.prec(), f.prec.bits);
    Complex x = x0.rounded_to(bits);
    if (n == 0) return eval_checked(f, x);

    Complex z0 = sqrt_w(x);
    // y = -2 z0 i  (so the two Pochhammer bases are y - n + j and -y - j)
    Complex y(ldexp2(z0.im(), 1), -ldexp2(z0.re(), 1));
    const Real tiny = Real::pow2(-bits / 2, bits);

    auto poch_checked = [&](const Complex& a, long k) {
        Complex r(Real(1L, bits), Real(0L, bits));
        for (long j = 0; j < k; ++j) {
            Complex factor = a + Complex(Real(double(j), bits));
            if (abs(factor) < tiny)
                throw DegenerateNodeError("cooper_dw_n: Pochhammer factor vanishes (2 z0 i near an integer)");
            r *= factor;
        }
        return r;
    };

    Complex sum(bits);
    for (long j = 0; j <= n; ++j) {
        Complex p1 = poch_checked(y + Complex(Real(double(j - n), bits)), j);
        Complex p2 = poch_checked(-y - Complex(Real(double(j), bits)), n - j);
        Complex w = Complex(to_real(binomial(n, j), bits)) / (p1 * p2);
        sum += w * eval_checked(f, node(x, 2 * j - n));
    }
    return (n % 2 == 0) ? sum : -sum;
}

Complex leibniz_dw_n(const FunctionHandle& f, const FunctionHandle& g,
                     const Complex& x, long n) {
    if (n < 0) throw PreconditionError("leibniz_dw_n: n must be >= 0");
    const long bits = std::min<long>(x.prec(), std::min<long>(f.prec.bits, g.prec.bits));
    Complex sum(bits);
    auto word = [&](const FunctionHandle& h, long d_count, long a_count) {
        std::vector<WOp> ops;
        ops.reserve(size_t(d_count + a_count));
        for (long i = 0; i < d_count; ++i) ops.push_back(WOp::D);   // innermost first
        for (long i = 0; i < a_count; ++i) ops.push_back(WOp::A);
        return apply_ops(h, x, ops);
    };
    for (long k = 0; k <= n; ++k) {
        BigRational cnk = leibniz_c(n, k);
        if (cnk == 0) continue;
        Complex inner(bits);
        for (long j = 0; j <= n - k; ++j) {
            Complex lhs = word(f, j + k, n - k - j);
            Complex rhs = word(g, n - j, j);
            inner += Complex(to_real(binomial(n - k, j), bits)) * lhs * rhs;
        }
        sum += Complex(to_real(cnk, bits)) * inner;
    }
    return sum;
}

Complex quotient_dw(const FunctionHandle& f, const FunctionHandle& g, const Complex& x) {
    const long bits = std::min<long>(x.prec(), std::min<long>(f.prec.bits, g.prec.bits));
    Complex xb = x.rounded_to(bits);
    Complex gp = eval_checked(g, node(xb, 1));
    Complex gm = eval_checked(g, node(xb, -1));
    const Real tiny = Real::pow2(-bits + 8, bits);
    if (abs(gp) < tiny || abs(gm) < tiny)
        throw ZeroDenominatorError("quotient_dw: g vanishes at a shifted node");
    Complex num = apply_dw(f, xb) * apply_aw(g, xb) - apply_aw(f, xb) * apply_dw(g, xb);
    return num / (gp * gm);
}

Complex commutator_residual(const FunctionHandle& f, const Complex& x) {
    const WOp da[2] = {WOp::D, WOp::A};   // A_W D_W f
    const WOp ad[2] = {WOp::A, WOp::D};   // D_W A_W f
    const WOp dd[2] = {WOp::D, WOp::D};
    Complex lhs = apply_ops(f, x, da) - apply_ops(f, x, ad);
    Complex half_dd = apply_ops(f, x, dd) / 2L;
    return lhs - half_dd;
}

} // namespace wilson
