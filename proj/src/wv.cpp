#include "wilson/wv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "wilson/errors.hpp"
#include "wilson/operators.hpp"

namespace wilson {

// ---- mu / nu -----------------------------------------------------------------

MuNuResult mu_nu(const WilsonSeries& s, const Real& r) {
    if (!(r > 0.0)) throw PreconditionError("mu_nu: r must be positive");
    const long p = s.computed_bits;
    Real rb = r.rounded_to(p);

    MuNuResult out;
    out.r = r;
    out.term_values.reserve(s.coeffs.size());

    Real prod(1L, p);      // r (r+1^2) ... (r+(n-1)^2), empty product for n = 0
    Real mu(0L, p);
    long nu = 0;
    const Real tie_slack = Real(1L, p) + Real::pow2(-s.policy.bits + 8, p);
    for (size_t n = 0; n < s.coeffs.size(); ++n) {
        if (n == 1) prod = rb;
        else if (n >= 2) prod *= (rb + Real(double((n - 1) * (n - 1)), p));
        Real t = abs(s.coeffs[n]) * prod;
        out.term_values.push_back(t);
        if (t * tie_slack >= mu && !t.is_zero()) {
            if (t > mu) mu = t;
            nu = long(n);
        }
    }
    out.mu = mu;
    out.nu = nu;
    out.scan_limit = long(s.coeffs.size()) - 1;
    if (mu.is_zero()) throw PreconditionError("mu_nu: zero series");

    // Certification: 10 consecutive terms below mu 2^{-bits/4}, decreasing.
    const Real thr = mu * Real::pow2(-s.policy.bits / 4, p);
    int run = 0;
    for (size_t n = size_t(nu) + 1; n < out.term_values.size(); ++n) {
        const Real& t = out.term_values[n];
        bool small = t < thr;
        bool decreasing = t <= out.term_values[n - 1] * tie_slack;
        if (small && decreasing) {
            if (++run >= 10) { out.certified_at = long(n); break; }
        } else {
            run = 0;
        }
    }
    if (out.certified_at < 0) {
        // Identically zero trailing coefficients certify a polynomial tail.
        long last_nonzero = -1;
        for (long i = out.scan_limit; i >= 0; --i)
            if (!s.coeffs[size_t(i)].is_zero()) { last_nonzero = i; break; }
        if (last_nonzero >= 0 && last_nonzero + 3 <= out.scan_limit)
            out.certified_at = last_nonzero + 1;
        else
            throw TruncationError("mu_nu: series too short to certify the maximal term",
                                  out.term_values.back().to_double());
    }
    return out;
}

double order_from_coeffs(const WilsonSeries& s) {
    const long K = long(s.coeffs.size()) - 1;
    long nonzero = 0;
    for (const auto& c : s.coeffs)
        if (!c.is_zero()) ++nonzero;
    if (nonzero < 20) return 0.0;   // polynomial-like: order 0
    double best = 0.0;
    for (long n = K / 2; n <= K; ++n) {
        const Complex& a = s.coeffs[size_t(n)];
        if (a.is_zero()) continue;
        double ln_a = log(abs(a)).to_double();
        if (ln_a >= 0.0) continue;   // out-of-gate index, not informative
        best = std::max(best, double(n) * std::log(double(n)) / (-ln_a));
    }
    return best;
}

double order_from_nu(const std::vector<std::pair<double, long>>& nu_samples) {
    if (nu_samples.size() < 5)
        throw PreconditionError("order_from_nu: need at least 5 samples");
    double rmin = nu_samples.front().first, rmax = nu_samples.front().first;
    for (const auto& s : nu_samples) {
        rmin = std::min(rmin, s.first);
        rmax = std::max(rmax, s.first);
    }
    if (rmax / rmin < 0.999e3)
        throw PreconditionError("order_from_nu: samples must span >= 3 decades");
    const double cut = rmax / 100.0;   // top two decades
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (const auto& [r, nu] : nu_samples) {
        if (r < cut) continue;
        double x = std::log(r), y = std::log(double(std::max<long>(nu, 1)));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 3) throw PreconditionError("order_from_nu: too few samples in the top decades");
    double denom = double(m) * sxx - sx * sx;
    double slope = (double(m) * sxy - sx * sy) / denom;
    return std::max(slope, 0.0);
}

// ---- comparison schedule -------------------------------------------------------

namespace {

bool ladder_feasible(double ln_t0, double delta, double* s0_out, double* a_inf_out) {
    double llt = std::log(ln_t0);
    if (llt <= 0) return false;
    double a_inf = std::pow(llt, -delta) / delta;
    double s0 = 1.0 / (ln_t0 * std::pow(llt, 1.0 + delta));
    if (a_inf + 2.0 * s0 <= std::log(2.0)) {
        *s0_out = s0;
        *a_inf_out = a_inf;
        return true;
    }
    return false;
}

} // namespace

ComparisonSchedule::ComparisonSchedule(double delta) : delta_(delta) {
    if (!(delta > 0)) throw PreconditionError("ComparisonSchedule: delta must be positive");
    // Ladder e^e, 10, 10^2, ... ; t0 kept as ln t0 (astronomical for tiny delta).
    double ln10 = std::log(10.0);
    if (ladder_feasible(std::exp(1.0), delta, &s0_, &a_inf_)) {
        ln_t0_ = std::exp(1.0);   // ln(e^e) = e
    } else {
        long k = 1;
        while (!ladder_feasible(double(k) * ln10, delta, &s0_, &a_inf_)) {
            ++k;
            if (k > 100000000L)
                throw Error("ComparisonSchedule: no feasible t0 in the ladder");
        }
        ln_t0_ = double(k) * ln10;
    }
    lcache_.push_back(0.0);
}

double ComparisonSchedule::alpha(double t) const {
    if (t < 0) throw PreconditionError("alpha: t must be >= 0");
    double ln_t = t > 0 ? std::log(t) : -1.0;
    if (t == 0 || ln_t <= ln_t0_) {
        // linear segment: alpha(t) = -s0 (1 + t/t0); t/t0 via exp to dodge overflow
        double ratio = t == 0 ? 0.0 : std::exp(ln_t - ln_t0_);
        return -s0_ * (1.0 + ratio);
    }
    double llt = std::log(ln_t);
    return -2.0 * s0_ - (a_inf_ - std::pow(llt, -delta_) / delta_);
}

double ComparisonSchedule::ln_alpha(long n) const {
    if (n < 0) throw PreconditionError("ln_alpha: n must be >= 0");
    if (size_t(n) < lcache_.size()) return lcache_[size_t(n)];
    // 5-point Gauss-Legendre per unit interval; alpha is smooth and slowly varying.
    static const double xs[5] = {0.04691007703066800, 0.23076534494715845, 0.5,
                                 0.76923465505284155, 0.95308992296933200};
    static const double ws[5] = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                                 0.23931433524968324, 0.11846344252809454};
    double acc = lcache_.back();
    for (long i = long(lcache_.size()) - 1; i < n; ++i) {
        double piece = 0;
        for (int q = 0; q < 5; ++q) piece += ws[q] * alpha(double(i) + xs[q]);
        acc += piece;
        lcache_.push_back(acc);
    }
    return lcache_[size_t(n)];
}

ComparisonSchedule make_schedule(double delta) { return ComparisonSchedule(delta); }

double epsilon_nn(long n, long N, double gamma) {
    if (!(0 <= n && n < N)) throw PreconditionError("epsilon_nn: need 0 <= n < N");
    auto sumsq = [](long m) {   // sum_{k=0}^m k^2
        return m < 0 ? 0.0 : double(m) * double(m + 1) * double(2 * m + 1) / 6.0;
    };
    return (sumsq(N - 1) - sumsq(n - 1)) / std::pow(double(N), gamma);
}

double b_of_n(long N, double delta) {
    if (N < 16) throw PreconditionError("b_of_n: N must be >= 16");
    double lnN = std::log(double(N));
    return 1.0 / (double(N) * lnN * std::pow(std::log(lnN), 1.0 + delta));
}

long kappa_tail(long N, double beta, double delta) {
    double b = b_of_n(N, delta);
    return long(std::floor(std::sqrt((beta / b) * std::log(1.0 / b))));
}

long kappa_main(long N, double delta) {
    if (N < 16) throw PreconditionError("kappa_main: N must be >= 16");
    double lnN = std::log(double(N));
    return long(std::floor(std::sqrt(double(N) * lnN * lnN * std::pow(std::log(lnN), 1.0 + delta))));
}

// ---- tau-normality -------------------------------------------------------------

namespace {

// Scan window: everything certified plus the far side demanded by the design
// scan-limit policy (guarded kappa for small nu). A series with identically
// zero trailing coefficients is polynomial-like and certifies itself.
long scan_extent(const WilsonSeries& s, const MuNuResult& munu, double delta) {
    const long have = long(s.coeffs.size()) - 1;
    long last_nonzero = -1;
    for (long i = have; i >= 0; --i)
        if (!s.coeffs[size_t(i)].is_zero()) { last_nonzero = i; break; }
    if (last_nonzero + 3 <= have) return have;
    long want = munu.nu + 4 * kappa_main(std::max<long>(munu.nu, 16), delta);
    if (have < want)
        throw TruncationError("scan: series shorter than nu + 4 kappa_main", 0.0);
    return std::max(want, munu.certified_at >= 0 ? munu.certified_at : want);
}

double ln_term(const MuNuResult& munu, long n) {
    const Real& t = munu.term_values[size_t(n)];
    if (t.is_zero()) return -std::numeric_limits<double>::infinity();
    return log(t).to_double();
}

} // namespace

TauNormalResult is_tau_normal(const WilsonSeries& s, const MuNuResult& munu,
                              double gamma, const ComparisonSchedule& sched) {
    const long N = munu.nu;
    const long limit = std::min<long>(scan_extent(s, munu, sched.delta()),
                                      long(munu.term_values.size()) - 1);
    const double ln_mu = log(munu.mu).to_double();
    TauNormalResult out;
    out.checked_up_to = limit;
    const double slack = 1e-12;
    for (long n = 0; n <= limit; ++n) {
        if (n == N) continue;
        double lhs = ln_term(munu, n);
        if (lhs == -std::numeric_limits<double>::infinity()) continue;
        lhs -= ln_mu;
        double env = (sched.ln_alpha(n) - sched.ln_alpha(N)) + double(n - N) * sched.ln_rho(N);
        if (n < N) env += std::log1p(epsilon_nn(n, N, gamma));
        if (lhs > env + slack) {
            out.normal = false;
            out.witness = n;
            return out;
        }
    }
    return out;
}

ExceptionalScanResult exceptional_scan(const WilsonSeries& s, const std::vector<double>& r_grid,
                                       double gamma, const ComparisonSchedule& sched) {
    if (!std::is_sorted(r_grid.begin(), r_grid.end()))
        throw PreconditionError("exceptional_scan: grid must be increasing");
    ExceptionalScanResult out;
    out.flagged.resize(r_grid.size(), 0);
    for (size_t i = 0; i < r_grid.size(); ++i) {
        MuNuResult munu = mu_nu(s, Real(r_grid[i], s.policy.bits));
        TauNormalResult tn = is_tau_normal(s, munu, gamma, sched);
        out.flagged[i] = tn.normal ? 0 : 1;
    }
    for (size_t i = 0; i < r_grid.size(); ++i) {
        if (!out.flagged[i]) continue;
        double width;
        if (i + 1 < r_grid.size()) width = std::log(r_grid[i + 1] / r_grid[i]);
        else if (i > 0) width = std::log(r_grid[i] / r_grid[i - 1]);
        else width = 0.0;
        out.log_measure += width;
    }
    return out;
}

// ---- asymptotic checkers --------------------------------------------------------

WVReport tail_check(const WilsonSeries& s, const MuNuResult& munu, double h,
                    double beta, double omega, double delta, double gamma) {
    if (!(0 < omega && omega < beta))
        throw PreconditionError("tail_check: need 0 < omega < beta");
    (void)gamma;
    const long N = munu.nu;
    const long n_guard = std::max<long>(N, 16);
    WVReport rep;
    rep.r = munu.r.to_double();
    rep.nu = N;
    rep.in_contract = N >= 16;
    rep.kappa = kappa_tail(n_guard, beta, delta);
    const long limit = std::min<long>(scan_extent(s, munu, delta),
                                      long(munu.term_values.size()) - 1);

    const long p = s.computed_bits;
    Real tail(0L, p);
    for (long k = 0; k <= limit; ++k) {
        if (std::llabs(k - N) < rep.kappa) continue;
        Real kh = k == 0 ? Real(h == 0.0 ? 1.0 : 0.0, p)
                         : pow(Real(double(k), p), Real(h, p));
        tail += kh * munu.term_values[size_t(k)];
    }
    double b = b_of_n(n_guard, delta);
    Real denom = munu.mu * pow(Real(double(N > 0 ? N : 1), p), Real(h, p))
                 * pow(Real(b, p), Real((omega - 1.0) / 2.0, p));
    rep.tail_ratio = (tail / denom).to_double();
    rep.residual = rep.tail_ratio;
    rep.bound = 1.0;
    return rep;
}

WVReport wv_main_check(const EntireFunctionSpec& f, const WilsonSeries& s,
                       const MuNuResult& munu, long n, double delta,
                       const MaxModulusResult& mm, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("wv_main_check: n must be >= 1");
    const long N = munu.nu;
    if (N < 1) throw PreconditionError("wv_main_check: central index is zero");
    const long p = s.policy.bits;
    const long n_guard = std::max<long>(N, 16);

    WVReport rep;
    rep.r = munu.r.to_double();
    rep.nu = N;
    rep.in_contract = N >= 16;
    rep.kappa = kappa_main(n_guard, delta);

    FunctionHandle h = f.handle(p);
    auto residual_at = [&](const Complex& x) {
        Complex d;
        try {
            d = cooper_dw_n(h, x, n);
        } catch (const DegenerateNodeError&) {
            d = apply_dw_iterated(h, x, n);
        }
        Complex lhs = pow(x / Complex(Real(double(N), p)), n) * d;
        return abs(lhs - f.eval(x, p));
    };

    Real res_argmax = residual_at(mm.argmax.rounded_to(p));
    Rng rng(seed ^ 0x77696c736f6eull);
    Real res_circle(0L, p);
    Real rr = munu.r.rounded_to(p);
    for (int i = 0; i < 8; ++i) {
        double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        Complex x(rr * cos(Real(theta, p)), rr * sin(Real(theta, p)));
        Real v = residual_at(x);
        if (v > res_circle) res_circle = v;
    }

    double M = mm.value.to_double() > 0 ? mm.value.to_double() : 1.0;
    rep.residual = res_argmax.to_double();
    rep.bound = double(rep.kappa) / double(N) * M;
    rep.residual_over_bound = rep.residual / rep.bound;
    rep.residual_over_m = rep.residual / M;
    rep.residual_circle_over_m = res_circle.to_double() / M;
    return rep;
}

double kn_bound(long n, double gamma) {
    if (n < 0) throw PreconditionError("kn_bound: n must be >= 0");
    if (n <= 1) return 9.0;
    double u = std::pow(double(n), 2.0 - gamma);
    if (u >= 1.0) throw PreconditionError("kn_bound: n^{2-gamma} must be < 1");
    return std::pow((1.0 + u) / (1.0 - u), double(n));
}

bool lemma_gg_check(const WilsonSeries& s, const MuNuResult& munu, const Real& m_of_r,
                    long n, double gamma) {
    double r = munu.r.to_double();
    if (!(r > std::max(4.0 * double(n) * double(n), std::pow(double(n), gamma))))
        throw PreconditionError("lemma_gg_check: need r > max(4n^2, n^gamma)");
    if (n >= long(munu.term_values.size()))
        throw PreconditionError("lemma_gg_check: n beyond the scanned terms");
    (void)s;
    Real lhs = munu.term_values[size_t(n)];
    Real rhs = Real(kn_bound(n, gamma), m_of_r.prec()) * m_of_r;
    return lhs <= rhs * (Real(1L, m_of_r.prec()) + Real::pow2(-40, m_of_r.prec()));
}

bool mbound_check(const MuNuResult& munu, const Real& m_of_r, double eps, double gamma) {
    const long p = m_of_r.prec();
    if (!(munu.mu >= 2.718281828459045))
        throw PreconditionError("mbound_check: need mu_W >= e");
    Real k(kn_bound(munu.nu, gamma), p);
    Real km = k * m_of_r;
    Real slack = Real(1L, p) + Real::pow2(-40, p);
    bool first = munu.mu <= km * slack;
    Real ln_mu = log(munu.mu);
    bool second = km <= munu.mu * pow(ln_mu, Real(0.5 + eps, p)) * slack;
    return first && second;
}

std::optional<long> wv_estimate_violation(const WilsonSeries& s, const MuNuResult& munu,
                                          double delta, double gamma) {
    const long N = munu.nu;
    const long limit = std::min<long>(scan_extent(s, munu, delta),
                                      long(munu.term_values.size()) - 1);
    const double ln_mu = log(munu.mu).to_double();
    const double slack = 1e-12;
    for (long k = 1; N + k <= limit; ++k) {
        double lhs = ln_term(munu, N + k);
        if (lhs == -std::numeric_limits<double>::infinity()) continue;
        double b = b_of_n(std::max<long>(N + k, 16), delta);
        if (lhs - ln_mu > -0.5 * double(k) * double(k) * b + slack) return N + k;
    }
    double bN = b_of_n(std::max<long>(N, 16), delta);
    double pref = std::log1p(1.0 / (3.0 * std::pow(double(std::max<long>(N, 2)), gamma - 3.0)));
    for (long k = 0; k <= N - 1; ++k) {
        double lhs = ln_term(munu, N - k);
        if (lhs == -std::numeric_limits<double>::infinity()) continue;
        if (lhs - ln_mu > pref - 0.5 * double(k) * double(k) * bN + slack) return N - k;
    }
    return std::nullopt;
}

} // namespace wilson
