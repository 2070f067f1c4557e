#include "wilson/combinatorics.hpp"

#include <mpfr.h>

namespace wilson {

// ---- rational.hpp helpers --------------------------------------------------

BigRational parse_rational(std::string_view s) {
    std::string t(s);
    if (t.empty()) throw ParseError("empty rational");
    if (t.find('/') != std::string::npos) {
        BigRational q;
        if (q.set_str(t, 10) != 0) throw ParseError("bad rational \"" + t + "\"");
        if (q.get_den() == 0) throw ParseError("zero denominator in \"" + t + "\"");
        q.canonicalize();
        return q;
    }
    // Decimal / scientific form: mantissa * 10^exp with exact scaling.
    std::string digits;
    long exp10 = 0;
    bool neg = false;
    size_t i = 0;
    if (t[i] == '+' || t[i] == '-') { neg = t[i] == '-'; ++i; }
    bool seen_digit = false, seen_dot = false;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            seen_digit = true;
            if (seen_dot) --exp10;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exp10 += std::stol(t.substr(i + 1));
            break;
        } else {
            throw ParseError("bad number \"" + t + "\"");
        }
    }
    if (!seen_digit) throw ParseError("bad number \"" + t + "\"");
    BigInt m(digits.empty() ? "0" : digits);
    if (neg) m = -m;
    BigRational q(m);
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, (unsigned long)(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0) q *= BigRational(p10);
    else q /= BigRational(p10);
    q.canonicalize();
    return q;
}

Real to_real(const BigRational& q, long prec_bits) {
    Real r(prec_bits);
    mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real to_real(const BigInt& z, long prec_bits) {
    Real r(prec_bits);
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---- binomial / pochhammer -------------------------------------------------

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

BigRational pochhammer(const BigRational& a, long k) {
    BigRational r(1);
    BigRational t = a;
    for (long j = 0; j < k; ++j, t += 1) r *= t;
    return r;
}

Complex pochhammer(const Complex& a, long k) {
    const long p = a.prec();
    Complex r(Real(1L, p), Real(0L, p));
    for (long j = 0; j < k; ++j) r *= (a + Complex(Real(double(j), p)));
    return r;
}

// ---- Leibniz coefficients C(n,k) --------------------------------------------

static BigInt factorial(long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

BigRational leibniz_c(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw PreconditionError("leibniz_c: need 0 <= k <= n");
    if (n == 0) return BigRational(1);          // C(0,0), convention (-1)!/(-1)! = 1
    if (n - 1 - k < 0) return BigRational(0);   // 1/(-1)! = 0, gives C(n,n) = 0
    BigRational quarter(-1, 4);
    BigRational r(factorial(n - 1 + k), factorial(n - 1 - k) * factorial(k));
    r.canonicalize();
    for (long j = 0; j < k; ++j) r *= quarter;
    return r;
}

BigRational leibniz_c_three_term(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw PreconditionError("leibniz_c_three_term: need 0 <= k <= n");
    if (k == 0) return BigRational(1);
    if (k == n) return BigRational(0);
    BigRational a = leibniz_c_three_term(n - 1, k);
    BigRational b = leibniz_c_three_term(n - 1, k - 1);
    BigRational step(n + k - 2, 2);
    step.canonicalize();
    return a - step * b;
}

BigRational leibniz_c_sum_recurrence(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        throw PreconditionError("leibniz_c_sum_recurrence: need 0 <= k <= n");
    if (k == 0) return BigRational(1);
    if (k == n) return BigRational(0);
    BigRational half(-1, 2);
    BigRational sum(0);
    for (long j = 0; j <= k; ++j) {
        BigRational w(factorial(n - 1 - j), factorial(n - 1 - k));
        w.canonicalize();
        BigRational sign(1);
        for (long i = 0; i < k - j; ++i) sign *= half;
        sum += sign * w * leibniz_c(n - 1, j);
    }
    return sum;
}

TriangleTable<BigRational> leibniz_c_table(long n_max) {
    TriangleTable<BigRational> t;
    t.rows.resize(size_t(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) {
        auto& row = t.rows[size_t(n)];
        row.resize(size_t(n) + 1);
        for (long k = 0; k <= n; ++k) {
            if (k == 0) row[0] = BigRational(1);
            else if (k == n) row[size_t(k)] = BigRational(0);
            else {
                BigRational step(n + k - 2, 2);
                step.canonicalize();
                row[size_t(k)] = t.rows[size_t(n - 1)][size_t(k)]
                                 - step * t.rows[size_t(n - 1)][size_t(k - 1)];
            }
            if (row[size_t(k)] != leibniz_c(n, k))
                throw Error("leibniz_c_table: recurrence/closed-form mismatch");
        }
    }
    return t;
}

// ---- central factorial numbers ----------------------------------------------

BigInt central_factorial_t(long k, long n) {
    if (k < 0 || n < 0) throw PreconditionError("central_factorial_t: negative index");
    if (k < n) return BigInt(0);
    if (n == 0) return BigInt(k == 0 ? 1 : 0);
    // Row-by-row over k with the two-term recurrence.
    std::vector<BigInt> row(size_t(k) + 1);   // row[j] = T(cur, j)
    row[0] = 0;
    std::vector<BigInt> prev(size_t(k) + 1);
    prev[0] = 1;   // T(0,0) = 1, T(0,j) = 0 for j >= 1
    for (long kk = 1; kk <= k; ++kk) {
        row[0] = 0;
        for (long j = 1; j <= kk && j <= n; ++j)
            row[size_t(j)] = prev[size_t(j - 1)] + BigInt(j) * BigInt(j) * prev[size_t(j)];
        for (long j = kk + 1; j <= n; ++j) row[size_t(j)] = 0;
        std::swap(row, prev);
    }
    return prev[size_t(n)];
}

BigInt central_factorial_t_closed(long k, long n) {
    if (k < 1 || n < 1) throw PreconditionError("central_factorial_t_closed: need k,n >= 1");
    BigRational sum(0);
    for (long j = 1; j <= n; ++j) {
        BigInt jp;
        mpz_ui_pow_ui(jp.get_mpz_t(), (unsigned long)j, (unsigned long)(2 * k));
        BigRational term(2 * jp, factorial(n - j) * factorial(n + j));
        term.canonicalize();
        if ((n + j) % 2 != 0) term = -term;
        sum += term;
    }
    sum.canonicalize();
    if (sum.get_den() != 1)
        throw Error("central_factorial_t_closed: non-integer result");
    return sum.get_num();
}

bool t_growth_bound_check(long k, long n) {
    if (k < 1 || n < 1) throw PreconditionError("t_growth_bound_check: need k,n >= 1");
    BigInt t = central_factorial_t(k, n);
    if (t == 0) return true;
    const long p = 256;
    Real lhs = log(to_real(t, p));
    Real rhs = log(Real(2.0, p)) + Real(double(2 * n), p)
               + Real(double(2 * k - 2 * n), p) * log(Real(double(n), p));
    return lhs <= rhs;
}

std::vector<BigInt> tau_poly_coeffs(long k) {
    if (k < 0) throw PreconditionError("tau_poly_coeffs: negative k");
    std::vector<BigInt> c{BigInt(1)};
    for (long j = 0; j < k; ++j) {
        // multiply by (x + j^2)
        std::vector<BigInt> next(c.size() + 1);
        BigInt j2 = BigInt(j) * BigInt(j);
        for (size_t m = 0; m < c.size(); ++m) {
            next[m] += c[m] * j2;
            next[m + 1] += c[m];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<std::vector<BigInt>> maclaurin_to_wilson_matrix(long K) {
    std::vector<std::vector<BigInt>> m(size_t(K) + 1, std::vector<BigInt>(size_t(K) + 1));
    for (long n = 0; n <= K; ++n)
        for (long k = 0; k <= K; ++k) {
            BigInt t = central_factorial_t(k, n);
            m[size_t(n)][size_t(k)] = (k % 2 == 0) ? t : -t;
        }
    return m;
}

std::vector<std::vector<BigInt>> wilson_to_maclaurin_matrix(long K) {
    std::vector<std::vector<BigInt>> m(size_t(K) + 1, std::vector<BigInt>(size_t(K) + 1));
    for (long k = 0; k <= K; ++k) {
        auto col = tau_poly_coeffs(k);
        for (long i = 0; i <= K; ++i) {
            BigInt c = (size_t(i) < col.size()) ? col[size_t(i)] : BigInt(0);
            m[size_t(i)][size_t(k)] = (k % 2 == 0) ? c : -c;
        }
    }
    return m;
}

} // namespace wilson
