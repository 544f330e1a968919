#include "schmidt/stationary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "schmidt/detail/compensated.hpp"
#include "schmidt/detail/double_double.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/special_functions.hpp"

namespace schmidt {

void ModeIndex::validate() const {
  if (n < 0 || m < 0)
    throw std::invalid_argument("ModeIndex: quantum numbers must be >= 0 (n=" +
                                std::to_string(n) + ", m=" + std::to_string(m) + ")");
  if (n + m > kMaxTotalQuanta)
    throw std::invalid_argument("ModeIndex: n + m = " + std::to_string(n + m) +
                                " exceeds the supported maximum " +
                                std::to_string(kMaxTotalQuanta));
}

namespace {

using detail::dd;

// Core of the coefficient formula, rearranged so that the Jacobi sum has
// degree N and the mu power K - N is non-negative:
//   |mu|^(K-N) sqrt(binom(S,K)/binom(S,N)) z^(-S/2)
//     * sum_{s=0}^{N} (-1)^s binom(M+N-s, N-s) binom(P, s) z^s,   z = 1 + mu^2.
// The alternating sum cancels by many orders of magnitude near the zeros of
// the coefficient, so the terms are built from exact integer binomials and
// accumulated in double-double.
double min_degree_core(int N, int M, int K, int P, double abs_mu) {
  const int S = N + M;
  const dd z = detail::dd_add(detail::two_prod(abs_mu, abs_mu), 1.0);

  dd sum{0.0, 0.0};
  dd zp{1.0, 0.0};
  for (int s = 0; s <= N; ++s) {
    dd t = detail::dd_mul(detail::dd_from_u64(detail::binomial_u64(M + N - s, N - s)),
                          detail::dd_from_u64(detail::binomial_u64(P, s)));
    t = detail::dd_mul(t, zp);
    sum = detail::dd_add(sum, (s & 1) ? detail::dd_neg(t) : t);
    zp = detail::dd_mul(zp, z);
  }

  dd pref = detail::dd_sqrt(detail::dd_div(detail::dd_from_u64(detail::binomial_u64(S, K)),
                                           detail::dd_from_u64(detail::binomial_u64(S, N))));
  pref = detail::dd_mul(pref, detail::dd_pow_int(dd{abs_mu, 0.0}, K - N));
  pref = detail::dd_div(pref, detail::dd_sqrt(detail::dd_pow_int(z, S)));
  return detail::dd_value(detail::dd_mul(pref, sum));
}

void check_mu_domain(double mu) {
  if (!(std::abs(mu) <= 1.0))
    throw std::invalid_argument("mu must satisfy |mu| <= 1, got " + std::to_string(mu));
}

}  // namespace

double coefficient(int n, int m, int k, int p, double mu) {
  if (n < 0 || m < 0 || k < 0 || p < 0)
    throw std::invalid_argument("coefficient: indices must be >= 0");
  if (n + m > kMaxTotalQuanta || k + p > kMaxTotalQuanta)
    throw std::invalid_argument("coefficient: index sum exceeds supported maximum " +
                                std::to_string(kMaxTotalQuanta));
  check_mu_domain(mu);
  if (k + p != n + m) return 0.0;
  if (mu == 0.0) return k == n ? 1.0 : 0.0;

  const double abs_mu = std::abs(mu);
  double sign = 1.0;
  int N, M, K, P;
  if (k >= n) {
    // Transposition-equivalent forms sharing the mu power k - n.
    if (n <= p) {
      N = n; M = m; K = k; P = p;
    } else {
      N = p; M = k; K = m; P = n;
    }
  } else {
    // Forms with mu power n - k carry the parity sign (-1)^(n+k).
    if (k <= m) {
      N = k; M = p; K = n; P = m;
    } else {
      N = m; M = n; K = p; P = k;
    }
    if ((n + k) & 1) sign = -sign;
  }
  if (mu < 0.0 && ((K - N) & 1)) sign = -sign;
  return sign * min_degree_core(N, M, K, P, abs_mu);
}

SchmidtSpectrum schmidt_spectrum(int n, int m, double mu) {
  ModeIndex source{n, m};
  source.validate();
  check_mu_domain(mu);

  const int total = n + m;
  SchmidtSpectrum spectrum;
  spectrum.mu = mu;
  spectrum.source = source;
  spectrum.lambdas.resize(total + 1);

  detail::CompensatedSum raw_sum;
  for (int k = 0; k <= total; ++k) {
    const double a = coefficient(n, m, k, total - k, mu);
    spectrum.lambdas[k] = a * a;
    raw_sum.add(spectrum.lambdas[k]);
  }

  const double sum = raw_sum.value();
  if (std::abs(sum - 1.0) > 1e-8)
    throw numerical_error("schmidt_spectrum(n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                          ", mu=" + std::to_string(mu) + "): raw mode sum " + std::to_string(sum) +
                          " deviates from 1 beyond 1e-8");
  for (double& lambda : spectrum.lambdas) lambda /= sum;
  return spectrum;
}

EntanglementReport entanglement(const SchmidtSpectrum& spectrum) {
  if (spectrum.lambdas.empty())
    throw std::invalid_argument("entanglement: empty spectrum");
  detail::CompensatedSum entropy_sum;
  detail::CompensatedSum purity_sum;
  for (double lambda : spectrum.lambdas) {
    if (!(lambda >= 0.0) || lambda > 1.0 + 1e-12)
      throw std::invalid_argument("entanglement: lambda out of [0, 1]: " +
                                  std::to_string(lambda));
    if (lambda > 0.0) entropy_sum.add(-lambda * std::log(lambda));
    purity_sum.add(lambda * lambda);
  }
  EntanglementReport report;
  report.entropy = std::max(0.0, entropy_sum.value());
  report.schmidt_k = 1.0 / purity_sum.value();
  return report;
}

double schmidt_k_closed_form(int m, double mu) {
  if (m < 0)
    throw std::invalid_argument("schmidt_k_closed_form: m must be >= 0, got " +
                                std::to_string(m));
  if (m > kMaxTotalQuanta)
    throw std::invalid_argument("schmidt_k_closed_form: m exceeds supported maximum");
  check_mu_domain(mu);
  const double z = 1.0 + mu * mu;
  return std::pow(z, 2 * m) / hyp2f1_terminating(m, std::pow(mu, 4));
}

std::vector<SweepRow> sweep_mu(int n, int m, const std::vector<double>& mu_grid) {
  ModeIndex{n, m}.validate();
  std::vector<SweepRow> rows;
  rows.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    if (!(mu > 0.0 && mu <= 1.0))
      throw std::invalid_argument("sweep_mu: grid value " + std::to_string(mu) +
                                  " outside (0, 1]");
    try {
      const EntanglementReport report = entanglement(schmidt_spectrum(n, m, mu));
      rows.push_back({mu, report.entropy, report.schmidt_k});
    } catch (const numerical_error& err) {
      throw numerical_error("sweep_mu at mu=" + std::to_string(mu) + ": " + err.what());
    }
  }
  return rows;
}

}  // namespace schmidt
