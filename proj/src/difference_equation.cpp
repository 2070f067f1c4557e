#include "wilson/difference_equation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "wilson/errors.hpp"
#include "wilson/function_spec.hpp"
#include "wilson/gamma.hpp"

namespace wilson {

using nlohmann::json;

long WilsonDifferenceEquation::degree(long k) const {
    const auto& p = coeff_polys.at(size_t(k));
    for (long d = long(p.size()) - 1; d >= 0; --d)
        if (p[size_t(d)] != 0) return d;
    return -1;
}

Complex WilsonDifferenceEquation::eval_coeff(long k, const Complex& x) const {
    const auto& p = coeff_polys.at(size_t(k));
    Complex acc(x.prec());
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + Complex(to_real(*it, x.prec()));
    return acc;
}

WilsonDifferenceEquation WilsonDifferenceEquation::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("equation: ") + e.what());
    }
    WilsonDifferenceEquation eq;
    long order = j.at("order").get<long>();
    const auto& cs = j.at("coeffs");
    if (long(cs.size()) != order + 1)
        throw ParseError("equation: coeffs must have order+1 entries");
    for (const auto& poly : cs) {
        std::vector<BigRational> p;
        for (const auto& c : poly) p.push_back(parse_rational(c.get<std::string>()));
        eq.coeff_polys.push_back(std::move(p));
    }
    if (eq.degree(eq.order()) < 0)
        throw ParseError("equation: leading coefficient a_n is identically zero");
    return eq;
}

std::string WilsonDifferenceEquation::to_json_text() const {
    json j;
    j["order"] = order();
    json cs = json::array();
    for (const auto& p : coeff_polys) {
        json poly = json::array();
        for (const auto& c : p) poly.push_back(to_string(c));
        cs.push_back(poly);
    }
    j["coeffs"] = cs;
    return j.dump(2);
}

WilsonDifferenceEquation WilsonDifferenceEquation::example_counterexample() {
    WilsonDifferenceEquation eq;
    eq.coeff_polys = {
        {BigRational(5), BigRational(16), BigRational(32), BigRational(64)},    // a0
        {BigRational(0), BigRational(-16), BigRational(-64), BigRational(-128)},// a1 = -16x(8x^2+4x+1)
        {BigRational(0), BigRational(4), BigRational(32), BigRational(64)},     // a2 = 4x(4x+1)^2
    };
    return eq;
}

NewtonPolygon newton_polygon(const WilsonDifferenceEquation& eq) {
    const long n = eq.order();
    if (n < 0 || eq.degree(n) < 0)
        throw PreconditionError("newton_polygon: a_n must not vanish identically");
    NewtonPolygon out;
    for (long k = 0; k <= n; ++k) {
        long d = eq.degree(n - k);
        if (d < 0) continue;   // identically zero coefficient: no point
        out.points.emplace_back(k, d - (n - k));
    }
    // Upper concave chain, left to right (slopes decrease along the chain).
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : out.points) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it turns the chain concave: cross((b-a),(pt-a)) <= 0
            long long cross = (long long)(b.first - a.first) * (pt.second - a.second) -
                              (long long)(b.second - a.second) * (pt.first - a.first);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    out.hull_vertices = hull;
    // Finite edges of the hull of the unbounded regions: the strictly
    // positive-slope prefix; later edges lie under the horizontal ray.
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long dx = hull[i + 1].first - hull[i].first;
        long dy = hull[i + 1].second - hull[i].second;
        if (dy <= 0) break;
        BigRational slope(dy, dx);
        slope.canonicalize();
        out.edge_slopes.push_back(slope);
    }
    std::sort(out.edge_slopes.begin(), out.edge_slopes.end());
    for (const auto& s : out.edge_slopes)
        if (s > 0 && s < BigRational(1, 3)) out.admissible_slopes.push_back(s);
    return out;
}

std::string NewtonPolygon::to_json_text() const {
    json j;
    json pts = json::array();
    for (const auto& [k, y] : points) pts.push_back(json::array({k, y}));
    j["points"] = pts;
    json hv = json::array();
    for (const auto& [k, y] : hull_vertices) hv.push_back(json::array({k, y}));
    j["hull"] = hv;
    json sl = json::array();
    for (const auto& s : edge_slopes) sl.push_back(to_string(s));
    j["slopes"] = sl;
    json ad = json::array();
    for (const auto& s : admissible_slopes) ad.push_back(to_string(s));
    j["admissible"] = ad;
    return j.dump(2);
}

Real equation_residual(const WilsonDifferenceEquation& eq, const FunctionHandle& f,
                       const std::vector<Complex>& points) {
    const long n = eq.order();
    Real worst(0L, f.prec.bits);
    for (const Complex& x : points) {
        const long p = std::min<long>(x.prec(), f.prec.bits);
        std::vector<Complex> d = apply_dw_all(f, x.rounded_to(p), n);
        Complex num(p);
        Real scale(0L, p);
        for (long k = 0; k <= n; ++k) {
            Complex ak = eq.eval_coeff(k, x.rounded_to(p));
            Complex term = ak * d[size_t(k)];
            num += term;
            scale += abs(term);
        }
        Real tiny = Real::pow2(-p, p);
        Real rel = abs(num) / (scale + tiny);
        if (scale.is_zero()) rel = Real(0L, p);   // 0/0 guard
        if (rel > worst) worst = rel;
    }
    return worst;
}

Complex bessel_i(const Complex& alpha, const Complex& z, long terms, long prec_bits,
                 Real* tol_out) {
    if (terms < 10) throw PreconditionError("bessel_i: terms must be >= 10");
    const long p = prec_bits;
    Complex ab = alpha.rounded_to(p);
    Complex zb = z.rounded_to(p);
    if (zb.is_zero()) {
        if (ab.is_zero()) return Complex(Real(1L, p), Real(0L, p));
        if (ab.re().sign() > 0) return Complex(p);
        throw PreconditionError("bessel_i: z = 0 with Re(alpha) <= 0");
    }
    Complex half_z = zb / 2L;
    Complex prefactor = exp(ab * log(half_z));      // (z/2)^alpha, principal
    Complex q = half_z * half_z;                    // z^2/4
    Complex u(Real(1L, p), Real(0L, p));            // q^k / k!
    Complex sum(p);
    Real scale(0L, p);
    const Real stop = Real::pow2(-p / 2, p);
    int small_run = 0;
    long k = 0;
    Real last_mag(0L, p);
    for (; k < std::min<long>(terms, 500); ++k) {
        Complex term = u * reciprocal_gamma(ab + Complex(Real(double(k + 1), p)));
        sum += term;
        Real mag = abs(term);
        last_mag = mag;
        Real smag = abs(sum);
        if (smag > scale) scale = smag;
        if (mag > scale) scale = mag;
        if (!scale.is_zero() && mag < stop * scale) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
        u = u * q / (k + 1);
    }
    if (small_run < 3)
        throw EvaluationError("bessel_i: series did not settle within the term cap");
    Complex value = prefactor * sum;
    if (tol_out) {
        // series tail estimate plus the Lanczos reciprocal-gamma floor
        Real floor_tol = abs(value) * Real(1e-12, p);
        Real tail = last_mag * abs(prefactor) * Real(2.0, p);
        *tol_out = max(tail, floor_tol);
    }
    return value;
}

Complex bessel_k(const Complex& alpha, const Complex& z, long terms, long prec_bits) {
    const long p = prec_bits;
    Complex ab = alpha.rounded_to(p);
    Complex pi_a = Complex(Real::pi(p)) * ab;
    Complex s = sin(pi_a);
    if (abs(s) < Real::pow2(-p / 4, p))
        throw PreconditionError("bessel_k: order too close to an integer for the sine form");
    Complex diff = bessel_i(-ab, z, terms, p) - bessel_i(ab, z, terms, p);
    return Complex(Real::pi(p)) * diff / (s * 2L);
}

EigenCheckReport eigen_check(const Complex& lambda, const std::vector<Complex>& points,
                             long prec_bits) {
    if (lambda.is_zero()) throw PreconditionError("eigen_check: lambda must be nonzero");
    const long p = prec_bits;
    EigenCheckReport rep{Real(0L, p), Real(0L, p), {}, {}};

    auto run_family = [&](bool second_kind, std::vector<Real>& per_point, Real& worst) {
        EntireFunctionSpec spec = second_kind
            ? EntireFunctionSpec::bessel_eigen_2(lambda)
            : EntireFunctionSpec::bessel_eigen_1(lambda);
        FunctionHandle h = spec.handle(p);
        for (const Complex& x : points) {
            Complex fx = h.eval(x.rounded_to(p));
            Complex dfx = apply_dw(h, x.rounded_to(p));
            Real denom = abs(fx);
            Real res = abs(dfx - lambda.rounded_to(p) * fx);
            Real rel = denom.is_zero() ? res : res / denom;
            per_point.push_back(rel);
            if (rel > worst) worst = rel;
        }
    };
    run_family(false, rep.per_point_f1, rep.residual_f1);
    run_family(true, rep.per_point_f2, rep.residual_f2);
    return rep;
}

CounterexampleReport counterexample_identities(const std::vector<Complex>& points,
                                               long prec_bits) {
    const long p = prec_bits;
    auto f_eval = [p](const Complex& x) {
        Complex w = sqrt_w(x.rounded_to(p));
        Complex a(-ldexp2(w.im(), 1), ldexp2(w.re(), 1));   // 2 i sqrt_w(x)
        return reciprocal_gamma(a) + reciprocal_gamma(-a);
    };
    auto g_eval = [p](const Complex& x) {
        Complex w = sqrt_w(x.rounded_to(p));
        Complex a(-ldexp2(w.im(), 1), ldexp2(w.re(), 1));
        Complex diff = reciprocal_gamma(a) - reciprocal_gamma(-a);
        return diff / a;   // (1/(2 i sqrt x)) [1/Gamma(2i sqrt x) - 1/Gamma(-2i sqrt x)]
    };
    FunctionHandle fh{f_eval, "gamma_reciprocal_sum", PrecisionPolicy(p)};

    CounterexampleReport rep{Real(0L, p), Real(0L, p)};
    for (const Complex& x0 : points) {
        Complex x = x0.rounded_to(p);
        Complex one(Real(1L, p), Real(0L, p));
        Complex fx = f_eval(x), gx = g_eval(x);
        Complex four_x = x * 4L;

        Complex d1 = apply_dw(fh, x);
        Complex rhs1 = fx * (one + one / four_x) - gx;
        Real scale1 = abs(d1) + abs(fx) + abs(gx);
        Real res1 = abs(d1 - rhs1) / max(scale1, Real(1e-30, p));
        if (res1 > rep.residual_first) rep.residual_first = res1;

        Complex d2 = apply_dw_iterated(fh, x, 2);
        Complex fourx1 = four_x + one;
        Complex rhs2 = fx * (one + (one * 2L) / fourx1 + (four_x - one) / (four_x * fourx1 * fourx1))
                       - gx * (one * 2L + (one * 2L) / (fourx1 * fourx1));
        Real scale2 = abs(d2) + abs(fx) + abs(gx);
        Real res2 = abs(d2 - rhs2) / max(scale2, Real(1e-30, p));
        if (res2 > rep.residual_second) rep.residual_second = res2;
    }
    return rep;
}

PowerLawFit nu_power_law_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 5)
        throw PreconditionError("nu_power_law_fit: need at least 5 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (const auto& [r, nu] : samples) {
        if (nu <= 0) continue;
        double x = std::log(r), y = std::log(nu);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 5) throw PreconditionError("nu_power_law_fit: too few positive samples");
    double denom = double(m) * sxx - sx * sx;
    double chi = (double(m) * sxy - sx * sy) / denom;
    double lnL = (sy - chi * sx) / double(m);
    return PowerLawFit{std::exp(lnL), chi};
}

} // namespace wilson
