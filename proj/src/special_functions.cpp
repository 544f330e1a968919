#include "schmidt/special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "schmidt/detail/compensated.hpp"
#include "schmidt/errors.hpp"

namespace schmidt {

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0, got " + std::to_string(n));
  if (n == 0) return 1.0;
  double hkm1 = 1.0;
  double hk = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double hkp1 = 2.0 * x * hk - 2.0 * k * hkm1;
    hkm1 = hk;
    hk = hkp1;
  }
  return hk;
}

namespace detail {

double real_binomial(double u, int r) {
  double res = 1.0;
  for (int j = 1; j <= r; ++j) res *= (u - j + 1) / j;
  return res;
}

std::uint64_t binomial_u64(int n, int k) {
  if (n < 0 || n > 64 || k < 0 || k > n)
    throw std::invalid_argument("binomial_u64: out of range");
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int i = 0; i <= 64; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  return table[n][k];
}

}  // namespace detail

double jacobi(int a_degree, double b_param, double c_param, double x) {
  if (a_degree < 0)
    throw std::invalid_argument("jacobi: degree must be >= 0, got " + std::to_string(a_degree));
  const double xm = 0.5 * (x - 1.0);
  const double xp = 0.5 * (x + 1.0);
  detail::CompensatedSum acc;
  for (int s = 0; s <= a_degree; ++s) {
    acc.add(detail::real_binomial(a_degree + b_param, a_degree - s) *
            detail::real_binomial(a_degree + c_param, s) *
            std::pow(xm, s) * std::pow(xp, a_degree - s));
  }
  return acc.value();
}

double hyp2f1_terminating(int m_neg, double x) {
  if (m_neg < 0)
    throw std::invalid_argument("hyp2f1_terminating: m must be >= 0, got " + std::to_string(m_neg));
  detail::CompensatedSum acc;
  if (m_neg <= 64) {
    // Exact integer binomials keep the x = 1 values exact.
    double power = 1.0;
    for (int j = 0; j <= m_neg; ++j) {
      const double b = static_cast<double>(detail::binomial_u64(m_neg, j));
      acc.add(b * b * power);
      power *= x;
    }
  } else {
    double term = 1.0;
    acc.add(1.0);
    for (int j = 0; j < m_neg; ++j) {
      const double ratio = static_cast<double>(m_neg - j) / (j + 1);
      term *= ratio * ratio * x;
      acc.add(term);
    }
  }
  return acc.value();
}

double log_factorial(int n) {
  if (n < 0)
    throw std::invalid_argument("log_factorial: n must be >= 0, got " + std::to_string(n));
  static const auto table = [] {
    std::array<double, 257> t{};
    t[0] = 0.0;
    detail::CompensatedSum acc;
    for (int k = 1; k <= 256; ++k) {
      acc.add(std::log(static_cast<double>(k)));
      t[k] = acc.value();
    }
    return t;
  }();
  if (n <= 256) return table[n];
  // Stirling series; at n > 256 the truncation error is far below 1 ulp.
  const double nn = n;
  const double inv = 1.0 / nn;
  const double inv2 = inv * inv;
  return nn * std::log(nn) - nn + 0.5 * std::log(2.0 * std::numbers::pi * nn) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

QuadratureRule gauss_hermite(int order) {
  if (order < 1 || order > 256)
    throw std::invalid_argument("gauss_hermite: order must be in [1, 256], got " +
                                std::to_string(order));
  const int n = order;
  const double eps = 1e-14;
  const int max_iter = 100;
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}

  // Orthonormal Hermite recurrence; returns {value, derivative} at z.
  const auto eval = [n, pim4](double z) {
    double p1 = pim4;
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
    }
    return std::pair{p1, std::sqrt(2.0 * n) * p2};
  };

  // Golub-Welsch eigenvalues of the Hermite Jacobi matrix seed the Newton
  // iteration; the empirical extrapolation guesses drift off the root basins
  // past order ~100.
  Eigen::VectorXd jacobi_diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd jacobi_sub = Eigen::VectorXd::Zero(std::max(n - 1, 1));
  for (int k = 1; k < n; ++k) jacobi_sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> seeds;
  seeds.computeFromTridiagonal(jacobi_diag, jacobi_sub.head(std::max(n - 1, 0)),
                               Eigen::EigenvaluesOnly);
  if (seeds.info() != Eigen::Success)
    throw numerical_error("gauss_hermite: tridiagonal seed decomposition failed");

  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = seeds.eigenvalues()(n - 1 - i);  // descending from the largest root

    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
      auto [p1, deriv] = eval(z);
      double z1 = z;
      z = z1 - p1 / deriv;
      converged = std::abs(z - z1) <= eps * std::max(1.0, std::abs(z));
    }
    if (!converged) throw numerical_error("gauss_hermite: Newton iteration did not converge");
    // Two polish steps tighten the root to the last ulp.
    for (int extra = 0; extra < 2; ++extra) {
      auto [p1, deriv] = eval(z);
      z -= p1 / deriv;
    }
    if (i > 0 && z >= x[i - 1])
      throw numerical_error("gauss_hermite: root ordering lost at order " + std::to_string(n));
    const double pp = eval(z).second;
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }

  // x currently holds descending positives then mirrored ascending tail;
  // rebuild in increasing order and enforce exact symmetry.
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = x[n - 1 - i];
    rule.weights[i] = w[n - 1 - i];
  }
  for (int i = 0; i < n / 2; ++i) {
    double a = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -a;
    rule.nodes[n - 1 - i] = a;
    double wm = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = wm;
    rule.weights[n - 1 - i] = wm;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace schmidt
