#pragma once

#include <cstdint>
#include <vector>

namespace schmidt {

// Nodes and weights of a Gauss-Hermite rule for the weight exp(-x^2):
// integral f(x) exp(-x^2) dx ~ sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive, sum = sqrt(pi)
  int order = 0;
};

// Physicists' Hermite polynomial H_n(x), three-term recurrence.
double hermite(int n, double x);

// Jacobi polynomial P_a^{(b,c)}(x) evaluated as the finite sum
//   sum_{s=0}^{a} binom(a+b, a-s) binom(a+c, s) ((x-1)/2)^s ((x+1)/2)^(a-s),
// with binomials in product form so negative-integer b, c are exact.
double jacobi(int a_degree, double b_param, double c_param, double x);

// Terminating series 2F1(-m, -m; 1; x) = sum_j binom(m,j)^2 x^j,
// summed ascending with compensation.
double hyp2f1_terminating(int m_neg, double x);

// ln(n!): exact cumulative sum for n <= 256, Stirling series beyond.
double log_factorial(int n);

// Gauss-Hermite rule of the given order (1..256), Newton iteration on
// H_order from the standard asymptotic initial guesses.
QuadratureRule gauss_hermite(int order);

namespace detail {

// Exact binomial coefficient; requires 0 <= n <= 64 so the value fits.
std::uint64_t binomial_u64(int n, int k);

// Generalized binomial binom(u, r) = prod_{j=1..r} (u - j + 1)/j for real u.
double real_binomial(double u, int r);

}  // namespace detail

}  // namespace schmidt
