#include "wilson/series.hpp"

#include <cmath>

#include "wilson/combinatorics.hpp"
#include "wilson/errors.hpp"
#include "wilson/maxmod.hpp"

namespace wilson {

Complex tau_eval(long k, const Complex& x, const Complex& x0) {
    if (k < 0) throw PreconditionError("tau_eval: k must be >= 0");
    const long p = x.prec();
    Complex z0 = sqrt_w(x0.rounded_to(p));
    Complex prod(Real(1L, p), Real(0L, p));
    for (long j = 0; j < k; ++j) {
        Complex zj(z0.re(), z0.im() + Real(double(j), p));
        prod *= (zj * zj - x);
    }
    return prod;
}

GateReport growth_gate(const EntireFunctionSpec& f, const std::vector<double>& radii,
                       long prec_bits, long samples_per_circle) {
    GateReport rep;
    rep.threshold = 2.0 * std::log(2.0);
    if (radii.empty()) return rep;
    auto h = f.handle(prec_bits);
    double r_top = radii.back();
    double running = 0.0;
    for (double r : radii) {
        if (r < 1.0) throw PreconditionError("growth_gate: radii must be >= 1");
        auto mm = max_modulus(h.eval, Real(r, prec_bits), samples_per_circle);
        double lnM = mm.value > 1.0 ? log(mm.value).to_double() : 0.0;
        double v = lnM / std::sqrt(r);
        rep.samples.emplace_back(r, v);
        if (r >= r_top / 10.0) running = std::max(running, v);
    }
    rep.gate_value = running;
    // 5% margin; advisory, a finite grid cannot certify a limsup.
    rep.pass = rep.gate_value < rep.threshold * 0.95;
    return rep;
}

long expansion_bits(long n_max, long policy_bits) {
    double n = double(std::max<long>(n_max, 2));
    long sched = 64 + long(std::ceil(4.0 * double(n_max) * std::log2(n)));
    return std::max(policy_bits, sched);
}

WilsonSeries expand_wilson(const EntireFunctionSpec& f, const Complex& x0, long n_max,
                           const PrecisionPolicy& policy, const ExpandOptions& opts) {
    if (n_max < 0) throw PreconditionError("expand_wilson: n_max must be >= 0");
    const long bits = opts.bits_override > 0 ? opts.bits_override
                                             : expansion_bits(n_max, policy.bits);
    WilsonSeries s;
    s.policy = policy;
    s.computed_bits = bits;
    s.x0 = x0.rounded_to(policy.bits);
    Complex x0b = x0.rounded_to(bits);
    Complex z0 = sqrt_w(x0b);
    s.z0 = z0.rounded_to(policy.bits);

    // Branch choice guarantees 2 z0 i is never a positive integer; a hit
    // would be an internal invariant violation, not an input error.
    {
        Complex two_z0_i(-ldexp2(z0.im(), 1), ldexp2(z0.re(), 1));
        if (two_z0_i.im().is_zero() && two_z0_i.re().is_integer() && two_z0_i.re().sign() > 0)
            throw Error("expand_wilson: 2 z0 i landed in N; branch invariant violated");
    }

    if (opts.run_gate) {
        std::vector<double> radii;
        for (double r = 1.0; r <= 1.0e4 + 0.5; r *= std::pow(10.0, 0.25)) radii.push_back(r);
        s.gate = growth_gate(f, radii, std::min<long>(policy.bits, 192), opts.gate_samples);
    }

    // Node values f(x0^{+(2j)}), shared across all n.
    std::vector<Complex> fj;
    fj.reserve(size_t(n_max) + 1);
    for (long j = 0; j <= n_max; ++j) {
        Complex zj(z0.re(), z0.im() + Real(double(j), bits));
        fj.push_back(f.eval(zj * zj, bits));
    }

    const bool exact_weights = x0.is_zero();
    s.coeffs.reserve(size_t(n_max) + 1);
    BigInt nfact(1);
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) nfact *= n;
        Complex acc(bits);
        for (long j = 0; j <= n; ++j) {
            if (exact_weights) {
                // (j)_j = (2j-1)!/(j-1)!, (2j+1)_{n-j} = (n+j)!/(2j)! -- all exact.
                BigInt den = nfact;
                {
                    BigInt a(1);
                    for (long l = 0; l < j; ++l) a *= (j + l);
                    den *= a;
                    BigInt b(1);
                    for (long l = 0; l < n - j; ++l) b *= (2 * j + 1 + l);
                    den *= b;
                }
                BigRational w(binomial(n, j), den);
                w.canonicalize();
                if ((n - j) % 2 != 0) w = -w;
                acc += Complex(to_real(w, bits)) * fj[size_t(j)];
            } else {
                Complex y(-ldexp2(z0.im(), 1), ldexp2(z0.re(), 1));   // 2 z0 i
                Complex p1 = pochhammer(-y + Complex(Real(double(j), bits)), j);
                Complex p2 = pochhammer(-y + Complex(Real(double(2 * j + 1), bits)), n - j);
                Complex w = Complex(to_real(binomial(n, j), bits)) / (p1 * p2);
                if ((n - j) % 2 != 0) w = -w;
                acc += w * fj[size_t(j)] / Complex(to_real(nfact, bits));
            }
        }
        s.coeffs.push_back(acc);
    }
    return s;
}

EvalResult eval_wilson(const WilsonSeries& s, const Complex& x, double tail_tol) {
    const long p = std::min<long>(s.policy.bits, x.prec());
    Complex xb = x.rounded_to(p);
    Complex z0 = s.z0.rounded_to(p);
    Complex sum(p);
    Complex tau(Real(1L, p), Real(0L, p));
    Real scale(0L, p);
    Real tol(tail_tol, p);
    Real last(0L, p);
    int small_run = 0;
    for (size_t k = 0; k < s.coeffs.size(); ++k) {
        Complex term = s.coeffs[k].rounded_to(p) * tau;
        sum += term;
        Real mag = abs(term);
        last = mag;
        Real smag = abs(sum);
        if (smag > scale) scale = smag;
        if (mag > scale) scale = mag;
        if (!scale.is_zero() && mag < tol * scale) {
            if (++small_run >= 3)
                return EvalResult{sum, mag};
        } else {
            small_run = 0;
        }
        Complex zk(z0.re(), z0.im() + Real(double(k), p));
        tau *= (zk * zk - xb);
    }
    if (s.coeffs.size() <= 1 && small_run == 0 && s.coeffs.size() > 0)
        return EvalResult{sum, Real(0L, p)};   // constant series
    throw TruncationError("eval_wilson: series exhausted before the tail settled",
                          last.to_double());
}

WilsonSeries dw_of_series(const WilsonSeries& s) {
    WilsonSeries d;
    d.policy = s.policy;
    d.computed_bits = s.computed_bits;
    d.x0 = node(s.x0, 1);
    d.z0 = sqrt_w(d.x0);
    if (s.coeffs.size() > 1) {
        d.coeffs.reserve(s.coeffs.size() - 1);
        for (size_t k = 1; k < s.coeffs.size(); ++k)
            d.coeffs.push_back(-(s.coeffs[k] * long(k)));
    }
    if (d.coeffs.empty()) d.coeffs.push_back(Complex(s.computed_bits));
    return d;
}

ConvergenceVerdict partial_sum_convergence_probe(const std::vector<Complex>& coeffs,
                                                 const Complex& x0, const Complex& test_point) {
    if (coeffs.empty()) return ConvergenceVerdict::converges;
    const long p = test_point.prec();
    // Guard: the probe is uninformative at the interpolation nodes.
    for (long j = 0; j < long(coeffs.size()); ++j) {
        if (abs(test_point - node(x0, 2 * j)) < Real::pow2(-p / 2, p))
            throw PreconditionError("convergence probe: test point is an interpolation node");
    }
    Complex z0 = sqrt_w(x0.rounded_to(p));
    std::vector<Real> mags;
    Complex tau(Real(1L, p), Real(0L, p));
    Real scale(0L, p);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        Complex term = coeffs[k].rounded_to(p) * tau;
        mags.push_back(abs(term));
        if (mags.back() > scale) scale = mags.back();
        Complex zk(z0.re(), z0.im() + Real(double(k), p));
        tau *= (zk * zk - test_point.rounded_to(p));
    }
    size_t n = mags.size();
    if (n >= 6) {
        bool growing = true;
        for (size_t i = n - 5; i < n; ++i)
            if (!(mags[i] >= mags[i - 1])) { growing = false; break; }
        Real first_nonzero(0L, p);
        for (const auto& m : mags)
            if (!m.is_zero()) { first_nonzero = m; break; }
        if (growing && mags[n - 1] > first_nonzero && !first_nonzero.is_zero())
            return ConvergenceVerdict::diverges;
    }
    const Real thr = Real::pow2(-p / 4, p) * (Real(1L, p) + scale);
    int tail_small = 0;
    for (size_t i = n >= 3 ? n - 3 : 0; i < n; ++i)
        if (mags[i] < thr) ++tail_small;
    if (tail_small == 3 || n < 3) return ConvergenceVerdict::converges;
    return ConvergenceVerdict::inconclusive;
}

} // namespace wilson
