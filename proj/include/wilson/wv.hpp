#ifndef WILSON_WV_HPP
#define WILSON_WV_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "wilson/maxmod.hpp"
#include "wilson/rng.hpp"
#include "wilson/series.hpp"

namespace wilson {

// ---- maximal term / central index -------------------------------------------

struct MuNuResult {
    Real r;
    Real mu;                   // mu_W(r; f)
    long nu = 0;               // largest maximizing index
    long scan_limit = 0;       // last index inspected
    long certified_at = -1;    // index where the smallness run completed
    std::vector<Real> term_values;   // |a_n| r (r+1^2)...(r+(n-1)^2)
};

// Scans term values until 10 consecutive terms sit below mu * 2^{-bits/4}
// while decreasing; throws TruncationError if the coefficients run out first.
MuNuResult mu_nu(const WilsonSeries& s, const Real& r);

// limsup estimator n ln n / (-ln |a_n|), running max over the top half of the
// available indices. Returns 0 for polynomial-like coefficient decay.
double order_from_coeffs(const WilsonSeries& s);

// Least-squares slope of ln nu against ln r over the top two decades.
double order_from_nu(const std::vector<std::pair<double, long>>& nu_samples);

// ---- comparison sequences ----------------------------------------------------

// alpha: [0, inf) -> [-ln 2, 0], C^1, linear on [0, t0], and
// alpha'(t) = -1/(t ln t (ln ln t)^{1+delta}) beyond t0. t0 is the smallest
// ladder value {e^e, 10, 10^2, ...} with A_inf + 2 s0 <= ln 2, stored as
// ln t0 (for small delta it exceeds the double range). alpha_n = e^{int_0^n alpha},
// rho_n = e^{-alpha(n)}.
class ComparisonSchedule {
public:
    explicit ComparisonSchedule(double delta);

    double delta() const { return delta_; }
    double ln_t0() const { return ln_t0_; }
    double s0() const { return s0_; }

    double alpha(double t) const;
    // L(n) = int_0^n alpha(t) dt = ln alpha_n; cached prefix sums.
    double ln_alpha(long n) const;
    double ln_rho(long n) const { return -alpha(double(n)); }
    double rho(long n) const { return std::exp(ln_rho(n)); }

private:
    double delta_;
    double ln_t0_;
    double s0_;
    double a_inf_;    // (ln ln t0)^{-delta}/delta, total decrease past t0
    mutable std::vector<double> lcache_;   // lcache_[n] = L(n)
};

ComparisonSchedule make_schedule(double delta);

// epsilon_{n,N} = sum_{k=n}^{N-1} k^2 / N^gamma (exact finite sum).
double epsilon_nn(long n, long N, double gamma);

// b(N) = 1/(N ln N (ln ln N)^{1+delta}); the contract requires N >= 16 so the
// iterated logarithm is safely positive.
double b_of_n(long N, double delta);
// kappa = floor(sqrt((beta/b(N)) ln(1/b(N)))).
long kappa_tail(long N, double beta, double delta);
// kappa = floor(sqrt(N (ln N)^2 (ln ln N)^{1+delta})).
long kappa_main(long N, double delta);

// ---- tau-normality -----------------------------------------------------------

struct TauNormalResult {
    bool normal = true;
    std::optional<long> witness;   // first violating index
    long checked_up_to = 0;
};

// Tests the two inequality families of tau-normality with N = nu_W(r;f) (the
// canonical candidate; a failure flags "not normal with N = nu", a
// conservative superset of the exceptional set).
TauNormalResult is_tau_normal(const WilsonSeries& s, const MuNuResult& munu,
                              double gamma, const ComparisonSchedule& sched);

struct ExceptionalScanResult {
    std::vector<char> flagged;   // per grid radius
    double log_measure = 0.0;    // sum of cell widths d ln r over flagged cells
};

ExceptionalScanResult exceptional_scan(const WilsonSeries& s, const std::vector<double>& r_grid,
                                       double gamma, const ComparisonSchedule& sched);

// ---- asymptotic checkers -----------------------------------------------------

struct WVReport {
    double r = 0;
    long nu = 0;
    bool in_contract = false;   // nu >= 16: the b/kappa formulas are in-domain
    long kappa = 0;
    double residual = 0;        // checker-specific (see each function)
    double bound = 0;
    double tail_ratio = 0;
    bool tau_normal = true;
    double residual_over_bound = 0;
    double residual_over_m = 0;
    double residual_circle_over_m = 0;   // max over the seeded circle points
};

// Tail sum sum_{|k-N|>=kappa} k^h |a_k tau_k(r;0)| against
// mu N^h b(N)^{(omega-1)/2}. Outside the N >= 16 contract the guarded value
// b(max(N,16)) is used and in_contract is false (polynomial fixtures need the
// small-N path; only in-contract radii feed the asymptotic assertions).
WVReport tail_check(const WilsonSeries& s, const MuNuResult& munu, double h,
                    double beta, double omega, double delta, double gamma);

// (x/N)^n (D_W^n f)(x) - f(x) at the maximum-modulus point (residual) and at
// 8 seeded circle points (reported separately); bound = (kappa_main/N) M(r;f).
WVReport wv_main_check(const EntireFunctionSpec& f, const WilsonSeries& s,
                       const MuNuResult& munu, long n, double delta,
                       const MaxModulusResult& mm, std::uint64_t seed);

// K_n of the term-vs-maximum bound: K_0 = K_1 = 9,
// K_n = (1+n^{2-gamma})^n (1-n^{2-gamma})^{-n} for n >= 2.
double kn_bound(long n, double gamma);

// |a_n tau_n(r;0)| <= K_n M(r;f) for r > max(4n^2, n^gamma).
bool lemma_gg_check(const WilsonSeries& s, const MuNuResult& munu, const Real& m_of_r,
                    long n, double gamma);

// mu <= K(r) M <= mu (ln+ mu)^{1/2+eps} with K(r) = K_{nu(r)}.
bool mbound_check(const MuNuResult& munu, const Real& m_of_r, double eps, double gamma);

// Lemma-WVestimate inequality families at one radius (b-guarded; meaningful
// in-contract). Returns first violating offset k if any.
std::optional<long> wv_estimate_violation(const WilsonSeries& s, const MuNuResult& munu,
                                          double delta, double gamma);

} // namespace wilson

#endif
