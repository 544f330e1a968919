#include "schmidt/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "schmidt/detail/compensated.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/stationary.hpp"

namespace schmidt::oracle {

namespace {

// Normalized harmonic-oscillator eigenfunction of unit frequency, with or
// without its Gaussian factor (the quadrature weight absorbs it).
double ho_poly_part(int j, double x) {
  const double norm =
      std::exp(-0.5 * (j * std::numbers::ln2 + log_factorial(j))) / std::pow(std::numbers::pi, 0.25);
  return norm * hermite(j, x);
}

double ho_wavefunction(int j, double x) { return ho_poly_part(j, x) * std::exp(-0.5 * x * x); }

// Frequency-omega eigenfunction: psi_j^(omega)(y) = omega^{1/4} psi_j(sqrt(omega) y),
// where omega is the Gaussian exponent scale (exp(-omega y^2 / 2)).
double ho_wavefunction_scaled(int j, double omega, double y) {
  return std::pow(omega, 0.25) * ho_wavefunction(j, std::sqrt(omega) * y);
}

double overlap_sum(int n, int m, int k, int p, double alpha, const QuadratureRule& rule) {
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x1 = rule.nodes[i];
    const double hk = ho_poly_part(k, x1);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double x2 = rule.nodes[j];
      const double y1 = ca * x1 - sa * x2;
      const double y2 = sa * x1 + ca * x2;
      // The four Gaussians combine to exp(-x1^2 - x2^2), the rule's weight.
      acc.add(rule.weights[i] * rule.weights[j] * ho_poly_part(n, y1) * ho_poly_part(m, y2) *
              hk * ho_poly_part(p, x2));
    }
  }
  return acc.value();
}

std::vector<double> descending_eigenvalues(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("oracle: eigendecomposition failed");
  Eigen::VectorXd ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

GridSpec GridSpec::for_modes(int n, int m) {
  const int q = std::max(n, m);
  return {2.0 * std::sqrt(2.0 * q + 1.0) + 4.0, 512};
}

void GridSpec::validate(int max_quantum) const {
  if (points_per_axis < 64)
    throw std::invalid_argument("GridSpec: points_per_axis must be >= 64, got " +
                                std::to_string(points_per_axis));
  // Classical turning point plus six ground-state widths of Gaussian tail.
  const double needed = std::sqrt(2.0 * max_quantum + 1.0) + 6.0 / std::numbers::sqrt2;
  if (!(half_width >= needed - 1e-12))
    throw std::invalid_argument("GridSpec: half_width " + std::to_string(half_width) +
                                " does not cover quantum number " + std::to_string(max_quantum) +
                                " (needs >= " + std::to_string(needed) + ")");
}

double overlap_coefficient_numeric(int n, int m, int k, int p, double mu,
                                   const QuadratureRule& rule) {
  if (n < 0 || m < 0 || k < 0 || p < 0)
    throw std::invalid_argument("overlap_coefficient_numeric: indices must be >= 0");
  if (!(std::abs(mu) <= 1.0))
    throw std::invalid_argument("overlap_coefficient_numeric: |mu| must be <= 1");
  const int needed = std::max({n, m, k, p}) + 8;
  if (rule.order < needed)
    throw std::invalid_argument("overlap_coefficient_numeric: rule order " +
                                std::to_string(rule.order) + " below required " +
                                std::to_string(needed));
  const double alpha = std::atan(mu);
  const double value = overlap_sum(n, m, k, p, alpha, rule);
  const int doubled = std::min(2 * rule.order, 256);
  if (doubled > rule.order) {
    const double refined = overlap_sum(n, m, k, p, alpha, gauss_hermite(doubled));
    if (std::abs(refined - value) > 1e-10)
      throw numerical_error("overlap_coefficient_numeric: not converged, order " +
                            std::to_string(rule.order) + " -> " + std::to_string(doubled) +
                            " moved the value by " + std::to_string(std::abs(refined - value)));
  }
  return value;
}

std::vector<double> grid_svd_spectrum(const std::function<double(double, double)>& psi,
                                      const GridSpec& grid) {
  const int n = grid.points_per_axis;
  const double h = 2.0 * grid.half_width / (n - 1);
  Eigen::MatrixXd sampled(n, n);
  for (int i = 0; i < n; ++i) {
    const double x1 = -grid.half_width + i * h;
    for (int j = 0; j < n; ++j) {
      const double x2 = -grid.half_width + j * h;
      sampled(i, j) = psi(x1, x2);
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(sampled * h);
  Eigen::VectorXd sigma = svd.singularValues();
  std::vector<double> lambdas(sigma.size());
  detail::CompensatedSum total;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    lambdas[i] = sigma(i) * sigma(i);
    total.add(lambdas[i]);
  }
  for (double& l : lambdas) l /= total.value();
  return lambdas;  // BDCSVD returns singular values in decreasing order
}

std::vector<double> rdm_spectrum_numeric(int n, int m, double mu, const GridSpec& grid) {
  ModeIndex{n, m}.validate();
  if (!(std::abs(mu) <= 1.0))
    throw std::invalid_argument("rdm_spectrum_numeric: |mu| must be <= 1");
  grid.validate(std::max(n, m));

  const int pts = grid.points_per_axis;
  const double h = 2.0 * grid.half_width / (pts - 1);
  const double alpha = std::atan(mu);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);

  Eigen::MatrixXd psi(pts, pts);
  for (int i = 0; i < pts; ++i) {
    const double x1 = -grid.half_width + i * h;
    for (int j = 0; j < pts; ++j) {
      const double x2 = -grid.half_width + j * h;
      psi(i, j) = ho_wavefunction(n, ca * x1 - sa * x2) * ho_wavefunction(m, sa * x1 + ca * x2);
    }
  }

  // Trapezoidal contraction over x2, then symmetric scaling by the x1 weights
  // so the kernel eigenproblem becomes an ordinary symmetric one.
  Eigen::VectorXd tw = Eigen::VectorXd::Constant(pts, h);
  tw(0) = 0.5 * h;
  tw(pts - 1) = 0.5 * h;
  Eigen::MatrixXd rho = psi * tw.asDiagonal() * psi.transpose();
  rho = 0.5 * (rho + rho.transpose()).eval();
  Eigen::VectorXd sq = tw.cwiseSqrt();
  Eigen::MatrixXd sym = sq.asDiagonal() * rho * sq.asDiagonal();

  std::vector<double> lambdas = descending_eigenvalues(sym);
  detail::CompensatedSum trailing;
  for (std::size_t i = static_cast<std::size_t>(n + m) + 1; i < lambdas.size(); ++i)
    trailing.add(std::abs(lambdas[i]));
  if (trailing.value() > 1e-6)
    throw numerical_error("rdm_spectrum_numeric: grid inadequate, trailing eigenvalue mass " +
                          std::to_string(trailing.value()));
  return lambdas;
}

std::vector<double> exact_wavefunction_svd(const CouplerSpec& spec, int n, int m,
                                           const GridSpec& grid) {
  ModeIndex{n, m}.validate();
  grid.validate(std::max(n, m));
  const DiagonalForm form = diagonalize(spec);
  const double ca = std::cos(form.alpha);
  const double sa = std::sin(form.alpha);
  const double wa = std::sqrt(form.a_prime);
  const double wb = std::sqrt(form.b_prime);
  auto psi = [&](double x1, double x2) {
    const double y1 = ca * x1 - sa * x2;
    const double y2 = sa * x1 + ca * x2;
    return ho_wavefunction_scaled(n, wa, y1) * ho_wavefunction_scaled(m, wb, y2);
  };
  std::vector<double> lambdas = grid_svd_spectrum(psi, grid);
  detail::CompensatedSum trailing;
  for (std::size_t i = static_cast<std::size_t>(n + m) + 1; i < lambdas.size(); ++i)
    trailing.add(lambdas[i]);
  if (trailing.value() > 1e-6)
    throw numerical_error("exact_wavefunction_svd: grid inadequate, trailing mass " +
                          std::to_string(trailing.value()));
  return lambdas;
}

std::vector<std::vector<double>> unitary_evolution_numeric(const InitialState& state, double mu,
                                                           double delta,
                                                           const std::vector<double>& time_grid) {
  state.validate();
  if (!(std::abs(mu) <= 1.0))
    throw std::invalid_argument("unitary_evolution_numeric: |mu| must be <= 1");
  const int s = state.s1 + state.s2;

  // Dense coefficient matrix and amplitude vector, evolved by plain
  // matrix-vector products.
  Eigen::MatrixXd w(s + 1, s + 1);
  for (int row = 0; row <= s; ++row)
    for (int k = 0; k <= s; ++k) w(row, k) = coefficient(row, s - row, k, s - k, mu);
  Eigen::VectorXd a(s + 1);
  for (int row = 0; row <= s; ++row) a(row) = coefficient(row, s - row, state.s1, state.s2, mu);

  std::vector<std::vector<double>> spectra;
  spectra.reserve(time_grid.size());
  for (double t : time_grid) {
    Eigen::VectorXcd phased(s + 1);
    for (int row = 0; row <= s; ++row)
      phased(row) = a(row) * std::polar(1.0, -delta * row * t);
    Eigen::VectorXcd c = w.transpose() * phased;
    std::vector<double> lambdas(s + 1);
    for (int k = 0; k <= s; ++k) lambdas[k] = std::norm(c(k));
    spectra.push_back(std::move(lambdas));
  }
  return spectra;
}

}  // namespace schmidt::oracle
