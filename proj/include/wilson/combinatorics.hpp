#ifndef WILSON_COMBINATORICS_HPP
#define WILSON_COMBINATORICS_HPP

#include <vector>

#include "wilson/complexw.hpp"
#include "wilson/rational.hpp"

namespace wilson {

// Exact binomial coefficient; 0 for k > n.
BigInt binomial(long n, long k);

// Rising factorial (a)_k, exact.
BigRational pochhammer(const BigRational& a, long k);

// Rising factorial for complex a at a's precision.
Complex pochhammer(const Complex& a, long k);

// Leibniz coefficients C(n,k) = (-1/4)^k (n-1+k)!/((n-1-k)! k!) with the
// convention (-1)!/(-1)! = 1 and 1/(-1)! = 0, so C(0,0) = 1 and C(n,n) = 0
// for n >= 1. Closed form.
BigRational leibniz_c(long n, long k);

// Same values by the three-term recurrence C(n,k) = C(n-1,k) - (n+k-2)/2 * C(n-1,k-1).
BigRational leibniz_c_three_term(long n, long k);

// Same values by the convolution recurrence
// C(n,k) = sum_j (-1/2)^{k-j} ((n-1-j)!/(n-1-k)!) C(n-1,j).
BigRational leibniz_c_sum_recurrence(long n, long k);

// Full triangle rows 0..n_max by the three-term recurrence; every entry is
// cross-checked against the closed form (internal invariant).
TriangleTable<BigRational> leibniz_c_table(long n_max);

// Chebyshev-Stirling / central factorial numbers of the second kind:
// T(0,0)=1, T(k,0)=0 for k>=1, T(k,n)=0 for k<n,
// T(k,n) = T(k-1,n-1) + n^2 T(k-1,n).
BigInt central_factorial_t(long k, long n);

// Same values from the alternating closed form
// T(k,n) = sum_{j=1}^n 2 (-1)^{n+j} j^{2k} / ((n-j)!(n+j)!)   (k,n >= 1).
BigInt central_factorial_t_closed(long k, long n);

// T(k,n) <= K e^{2n} n^{2k-2n} with the implementation constant K = 2,
// validated over the tested range only (the source bound is existential).
bool t_growth_bound_check(long k, long n);

// Ascending exact coefficients of prod_{j=0}^{k-1} (x + j^2) = (-1)^k tau_k(x;0).
// Length k+1; the j = 0 factor makes the constant term vanish for k >= 1.
std::vector<BigInt> tau_poly_coeffs(long k);

// (K+1)x(K+1) exact matrices between Maclaurin and Wilson coefficients at
// x0 = 0: forward entry (n,k) is (-1)^k T(k,n); inverse entry (m,k) is
// (-1)^k [x^m] prod_{j<k}(x+j^2). Their product is the identity.
std::vector<std::vector<BigInt>> maclaurin_to_wilson_matrix(long K);
std::vector<std::vector<BigInt>> wilson_to_maclaurin_matrix(long K);

} // namespace wilson

#endif
