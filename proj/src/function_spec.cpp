#include "wilson/function_spec.hpp"

#include <nlohmann/json.hpp>

#include "wilson/difference_equation.hpp"
#include "wilson/errors.hpp"
#include "wilson/gamma.hpp"
#include "wilson/series.hpp"

namespace wilson {

using nlohmann::json;

Complex factorial_power_eval(const Complex& x, double gamma, long prec_bits) {
    const long p = prec_bits + 64;
    Complex xb = x.rounded_to(p);
    Complex sum(Real(1L, p), Real(0L, p));
    Complex xk(Real(1L, p), Real(0L, p));
    Real maxmag(1L, p);
    const Real stop = Real::pow2(-prec_bits - 16, p);
    int small_run = 0;
    for (long k = 1; k <= 200000; ++k) {
        xk *= xb;
        // (sqrt(e)/k)^{gamma k} = exp(gamma (k/2 - k ln k))
        Real kk(double(k), p);
        Real lf = Real(gamma, p) * (ldexp2(kk, -1) - kk * log(kk));
        Complex term = xk * exp(lf);
        sum += term;
        Real mag = abs(term);
        if (mag > maxmag) maxmag = mag;
        Real s = abs(sum);
        if (s > maxmag) maxmag = s;
        if (mag < maxmag * stop) {
            if (++small_run >= 6 && k >= 8) return sum.rounded_to(prec_bits);
        } else {
            small_run = 0;
        }
    }
    throw EvaluationError("factorial_power: series did not settle at " + x.to_string(6));
}

namespace {

Complex horner(const std::vector<BigRational>& coeffs, const Complex& x, long prec_bits) {
    // Evaluated with 64 guard bits, which plays the role of a compensated
    // scheme at the target precision.
    const long p = prec_bits + 64;
    Complex xb = x.rounded_to(p);
    Complex acc(p);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * xb + Complex(to_real(*it, p));
    return acc.rounded_to(prec_bits);
}

Complex parse_complex_pair(const std::pair<std::string, std::string>& pr, long prec_bits) {
    return Complex(Real::from_string(pr.first, prec_bits),
                   Real::from_string(pr.second, prec_bits));
}

Complex gamma_reciprocal_sum_eval(const Complex& x, long prec_bits) {
    Complex w = sqrt_w(x.rounded_to(prec_bits));
    Complex a(-ldexp2(w.im(), 1), ldexp2(w.re(), 1));   // 2 i sqrt_w(x)
    return reciprocal_gamma(a) + reciprocal_gamma(-a);
}

Complex bessel_eigen_eval(const Complex& x, const Complex& lambda, bool second_kind,
                          long prec_bits) {
    const long p = prec_bits;
    Complex w = sqrt_w(x.rounded_to(p));
    Complex alpha(-ldexp2(w.im(), 1), ldexp2(w.re(), 1));   // 2 i sqrt_w(x)
    Complex two(Real(2L, p), Real(0L, p));
    if (second_kind) {
        Complex z = -(two / lambda.rounded_to(p));
        return bessel_k(alpha, z, 500, p) + bessel_k(-alpha, z, 500, p);
    }
    Complex z = two / lambda.rounded_to(p);
    return bessel_i(alpha, z, 500, p) + bessel_i(-alpha, z, 500, p);
}

std::vector<Complex> parse_wilson_coeffs(
    const std::vector<std::pair<std::string, std::string>>& raw, long prec_bits) {
    std::vector<Complex> out;
    out.reserve(raw.size());
    for (const auto& pr : raw) out.push_back(parse_complex_pair(pr, prec_bits));
    return out;
}

} // namespace

EntireFunctionSpec EntireFunctionSpec::factorial_power(double g) {
    EntireFunctionSpec s;
    s.kind = Kind::builtin;
    s.builtin = Builtin::factorial_power;
    s.gamma_param = g;
    return s;
}

EntireFunctionSpec EntireFunctionSpec::polynomial(std::vector<BigRational> coeffs) {
    EntireFunctionSpec s;
    s.kind = Kind::builtin;
    s.builtin = Builtin::polynomial;
    s.coeffs = std::move(coeffs);
    return s;
}

EntireFunctionSpec EntireFunctionSpec::maclaurin(std::vector<BigRational> coeffs,
                                                 std::optional<double> tail_bound) {
    EntireFunctionSpec s;
    s.kind = Kind::maclaurin;
    s.coeffs = std::move(coeffs);
    s.tail_bound = tail_bound;
    return s;
}

EntireFunctionSpec EntireFunctionSpec::bessel_eigen_1(const Complex& lambda) {
    EntireFunctionSpec s;
    s.kind = Kind::builtin;
    s.builtin = Builtin::bessel_eigen_1;
    s.lambda = {lambda.re().to_string(), lambda.im().to_string()};
    return s;
}

EntireFunctionSpec EntireFunctionSpec::bessel_eigen_2(const Complex& lambda) {
    EntireFunctionSpec s;
    s.kind = Kind::builtin;
    s.builtin = Builtin::bessel_eigen_2;
    s.lambda = {lambda.re().to_string(), lambda.im().to_string()};
    return s;
}

EntireFunctionSpec EntireFunctionSpec::gamma_reciprocal_sum() {
    EntireFunctionSpec s;
    s.kind = Kind::builtin;
    s.builtin = Builtin::gamma_reciprocal_sum;
    return s;
}

Complex EntireFunctionSpec::eval(const Complex& x, long prec_bits) const {
    switch (kind) {
        case Kind::maclaurin:
            return horner(coeffs, x, prec_bits);
        case Kind::wilson: {
            WilsonSeries s;
            s.x0 = parse_complex_pair(x0, prec_bits);
            s.z0 = sqrt_w(s.x0);
            s.coeffs = parse_wilson_coeffs(wilson_coeffs, prec_bits);
            s.policy = PrecisionPolicy(prec_bits);
            s.computed_bits = prec_bits;
            return eval_wilson(s, x).value;
        }
        case Kind::builtin:
            switch (builtin) {
                case Builtin::factorial_power:
                    return factorial_power_eval(x, gamma_param, prec_bits);
                case Builtin::polynomial:
                    return horner(coeffs, x, prec_bits);
                case Builtin::bessel_eigen_1:
                    return bessel_eigen_eval(x, parse_complex_pair(lambda, prec_bits), false, prec_bits);
                case Builtin::bessel_eigen_2:
                    return bessel_eigen_eval(x, parse_complex_pair(lambda, prec_bits), true, prec_bits);
                case Builtin::gamma_reciprocal_sum:
                    return gamma_reciprocal_sum_eval(x, prec_bits);
            }
    }
    throw Error("EntireFunctionSpec: bad kind");
}

FunctionHandle EntireFunctionSpec::handle(long prec_bits) const {
    EntireFunctionSpec copy = *this;
    return FunctionHandle{
        [copy, prec_bits](const Complex& x) { return copy.eval(x, prec_bits); },
        label(), PrecisionPolicy(prec_bits)};
}

std::optional<double> EntireFunctionSpec::known_order() const {
    if (kind == Kind::builtin) {
        switch (builtin) {
            case Builtin::factorial_power: return 1.0 / gamma_param;
            case Builtin::polynomial: return 0.0;
            case Builtin::gamma_reciprocal_sum: return 0.5;
            case Builtin::bessel_eigen_1:
            case Builtin::bessel_eigen_2: return 0.5;
        }
    }
    if (kind == Kind::maclaurin) return 0.0;   // finite list: a polynomial up to its tail bound
    return std::nullopt;
}

std::string EntireFunctionSpec::label() const {
    switch (kind) {
        case Kind::maclaurin: return "maclaurin[" + std::to_string(coeffs.size()) + "]";
        case Kind::wilson: return "wilson[" + std::to_string(wilson_coeffs.size()) + "]";
        case Kind::builtin:
            switch (builtin) {
                case Builtin::factorial_power:
                    return "factorial_power(" + std::to_string(gamma_param) + ")";
                case Builtin::polynomial: return "polynomial[" + std::to_string(coeffs.size()) + "]";
                case Builtin::bessel_eigen_1: return "bessel_eigen_1";
                case Builtin::bessel_eigen_2: return "bessel_eigen_2";
                case Builtin::gamma_reciprocal_sum: return "gamma_reciprocal_sum";
            }
    }
    return "?";
}

EntireFunctionSpec EntireFunctionSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("function spec: ") + e.what());
    }
    EntireFunctionSpec s;
    const std::string kind = j.value("kind", "");
    auto read_coeffs = [&](const char* key) {
        std::vector<BigRational> out;
        for (const auto& c : j.at(key)) out.push_back(parse_rational(c.get<std::string>()));
        return out;
    };
    if (kind == "maclaurin") {
        s.kind = Kind::maclaurin;
        s.coeffs = read_coeffs("coeffs");
        if (j.contains("tail_bound"))
            s.tail_bound = parse_rational(j.at("tail_bound").get<std::string>()).get_d();
    } else if (kind == "wilson") {
        s.kind = Kind::wilson;
        s.x0 = {j.at("x0").at(0).get<std::string>(), j.at("x0").at(1).get<std::string>()};
        for (const auto& c : j.at("coeffs")) {
            if (c.is_array())
                s.wilson_coeffs.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
            else
                s.wilson_coeffs.emplace_back(c.get<std::string>(), "0");
        }
    } else if (kind == "builtin") {
        s.kind = Kind::builtin;
        const std::string name = j.at("name").get<std::string>();
        if (name == "factorial_power") {
            s.builtin = Builtin::factorial_power;
            s.gamma_param = parse_rational(j.at("gamma").get<std::string>()).get_d();
        } else if (name == "polynomial") {
            s.builtin = Builtin::polynomial;
            s.coeffs = read_coeffs("coeffs");
        } else if (name == "bessel_eigen_1" || name == "bessel_eigen_2") {
            s.builtin = name == "bessel_eigen_1" ? Builtin::bessel_eigen_1 : Builtin::bessel_eigen_2;
            if (j.contains("lambda"))
                s.lambda = {j.at("lambda").at(0).get<std::string>(),
                            j.at("lambda").at(1).get<std::string>()};
        } else if (name == "gamma_reciprocal_sum") {
            s.builtin = Builtin::gamma_reciprocal_sum;
        } else {
            throw ParseError("function spec: unknown builtin \"" + name + "\"");
        }
    } else {
        throw ParseError("function spec: unknown kind \"" + kind + "\"");
    }
    return s;
}

std::string EntireFunctionSpec::to_json_text() const {
    json j;
    switch (kind) {
        case Kind::maclaurin: {
            j["kind"] = "maclaurin";
            json cs = json::array();
            for (const auto& c : coeffs) cs.push_back(to_string(c));
            j["coeffs"] = cs;
            if (tail_bound) j["tail_bound"] = std::to_string(*tail_bound);
            break;
        }
        case Kind::wilson: {
            j["kind"] = "wilson";
            j["x0"] = json::array({x0.first, x0.second});
            json cs = json::array();
            for (const auto& c : wilson_coeffs) {
                if (c.second == "0") cs.push_back(c.first);
                else cs.push_back(json::array({c.first, c.second}));
            }
            j["coeffs"] = cs;
            break;
        }
        case Kind::builtin: {
            j["kind"] = "builtin";
            switch (builtin) {
                case Builtin::factorial_power:
                    j["name"] = "factorial_power";
                    j["gamma"] = std::to_string(gamma_param);
                    break;
                case Builtin::polynomial: {
                    j["name"] = "polynomial";
                    json cs = json::array();
                    for (const auto& c : coeffs) cs.push_back(to_string(c));
                    j["coeffs"] = cs;
                    break;
                }
                case Builtin::bessel_eigen_1:
                    j["name"] = "bessel_eigen_1";
                    j["lambda"] = json::array({lambda.first, lambda.second});
                    break;
                case Builtin::bessel_eigen_2:
                    j["name"] = "bessel_eigen_2";
                    j["lambda"] = json::array({lambda.first, lambda.second});
                    break;
                case Builtin::gamma_reciprocal_sum:
                    j["name"] = "gamma_reciprocal_sum";
                    break;
            }
            break;
        }
    }
    return j.dump(2);
}

} // namespace wilson
