#include "schmidt/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "schmidt/detail/compensated.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/stationary.hpp"

namespace schmidt {

void InitialState::validate() const {
  if (s1 < 0 || s2 < 0)
    throw std::invalid_argument("InitialState: quantum numbers must be >= 0 (s1=" +
                                std::to_string(s1) + ", s2=" + std::to_string(s2) + ")");
  if (s1 + s2 > kMaxTotalQuanta)
    throw std::invalid_argument("InitialState: s1 + s2 = " + std::to_string(s1 + s2) +
                                " exceeds the supported maximum " +
                                std::to_string(kMaxTotalQuanta));
}

namespace {

// Rows n, columns k: W[n][k] = A^{k, s-k}_{n, s-n}.
std::vector<std::vector<double>> coefficient_matrix(int s, double mu) {
  std::vector<std::vector<double>> w(s + 1, std::vector<double>(s + 1));
  for (int n = 0; n <= s; ++n)
    for (int k = 0; k <= s; ++k) w[n][k] = coefficient(n, s - n, k, s - k, mu);
  return w;
}

double entropy_of(const std::vector<double>& lambdas) {
  detail::CompensatedSum acc;
  for (double l : lambdas)
    if (l > 0.0) acc.add(-l * std::log(l));
  return std::max(0.0, acc.value());
}

// Level phases theta_n such that the evolved coefficient is
// sum_n a_n W[n][k] exp(-i theta_n t).
std::vector<double> level_phases(const InitialState& state, const DiagonalForm& form,
                                 EvolutionMode mode) {
  const int s = state.s1 + state.s2;
  std::vector<double> theta(s + 1);
  if (mode == EvolutionMode::delta_approximation) {
    const double delta = coupling_delta(form.source, form);
    for (int n = 0; n <= s; ++n) theta[n] = delta * n;
  } else {
    const double ground = std::sqrt(form.source.a) * (state.s1 + 0.5) +
                          std::sqrt(form.source.b) * (state.s2 + 0.5);
    for (int n = 0; n <= s; ++n) theta[n] = energy(form, n, s - n).value - ground;
  }
  return theta;
}

std::vector<double> spectrum_at(const std::vector<double>& amplitudes,
                                const std::vector<std::vector<double>>& w,
                                const std::vector<double>& theta, double t) {
  const int s = static_cast<int>(amplitudes.size()) - 1;
  std::vector<std::complex<double>> rotated(s + 1);
  for (int n = 0; n <= s; ++n) rotated[n] = amplitudes[n] * std::polar(1.0, -theta[n] * t);
  std::vector<double> lambdas(s + 1);
  for (int k = 0; k <= s; ++k) {
    std::complex<double> c = 0.0;
    for (int n = 0; n <= s; ++n) c += rotated[n] * w[n][k];
    lambdas[k] = std::norm(c);
  }
  return lambdas;
}

EvolutionTrace trace_from(const InitialState& state, double mu,
                          const std::vector<double>& grid, const std::vector<double>& theta,
                          EvolutionMode mode) {
  const int s = state.s1 + state.s2;
  const std::vector<double> amplitudes = initial_amplitudes(state.s1, state.s2, mu);
  const auto w = coefficient_matrix(s, mu);

  EvolutionTrace trace;
  trace.mode = mode;
  trace.times = grid;
  trace.spectra.reserve(grid.size());
  trace.entropies.reserve(grid.size());
  for (double t : grid) {
    std::vector<double> lambdas = spectrum_at(amplitudes, w, theta, t);
    detail::CompensatedSum total;
    for (double l : lambdas) total.add(l);
    if (std::abs(total.value() - 1.0) > 1e-9)
      throw numerical_error("evolve: mode sum " + std::to_string(total.value()) +
                            " deviates from 1 at t=" + std::to_string(t));
    trace.entropies.push_back(entropy_of(lambdas));
    trace.spectra.push_back(std::move(lambdas));
  }
  return trace;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("evolve: empty time grid");
  if (grid.front() != 0.0)
    throw std::invalid_argument("evolve: time grid must start at 0, got " +
                                std::to_string(grid.front()));
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("evolve: time grid must be strictly increasing");
}

}  // namespace

std::vector<double> initial_amplitudes(int s1, int s2, double mu) {
  InitialState{s1, s2}.validate();
  const int s = s1 + s2;
  std::vector<double> amplitudes(s + 1);
  detail::CompensatedSum norm;
  for (int n = 0; n <= s; ++n) {
    amplitudes[n] = coefficient(n, s - n, s1, s2, mu);
    norm.add(amplitudes[n] * amplitudes[n]);
  }
  if (std::abs(norm.value() - 1.0) > 1e-10)
    throw numerical_error("initial_amplitudes(s1=" + std::to_string(s1) +
                          ", s2=" + std::to_string(s2) + ", mu=" + std::to_string(mu) +
                          "): squared norm " + std::to_string(norm.value()) +
                          " deviates from 1 beyond 1e-10");
  return amplitudes;
}

std::complex<double> evolved_coefficient(int k, int p, double t, const InitialState& state,
                                         const DiagonalForm& form, EvolutionMode mode) {
  state.validate();
  if (k < 0 || p < 0)
    throw std::invalid_argument("evolved_coefficient: indices must be >= 0");
  if (t < 0.0)
    throw std::invalid_argument("evolved_coefficient: t must be >= 0, got " + std::to_string(t));
  const int s = state.s1 + state.s2;
  if (k + p != s) return 0.0;  // conservation of total quanta

  const std::vector<double> amplitudes = initial_amplitudes(state.s1, state.s2, form.mu);
  const std::vector<double> theta = level_phases(state, form, mode);
  std::complex<double> c = 0.0;
  for (int n = 0; n <= s; ++n)
    c += amplitudes[n] * coefficient(n, s - n, k, p, form.mu) * std::polar(1.0, -theta[n] * t);
  return c;
}

EvolutionTrace evolve(const InitialState& state, const DiagonalForm& form, double mu,
                      const std::vector<double>& time_grid, EvolutionMode mode) {
  state.validate();
  check_grid(time_grid);
  return trace_from(state, mu, time_grid, level_phases(state, form, mode), mode);
}

EvolutionTrace evolve_delta_t(const InitialState& state, double mu,
                              const std::vector<double>& delta_t_grid) {
  state.validate();
  check_grid(delta_t_grid);
  const int s = state.s1 + state.s2;
  std::vector<double> theta(s + 1);
  for (int n = 0; n <= s; ++n) theta[n] = n;  // grid carries delta*t directly
  return trace_from(state, mu, delta_t_grid, theta, EvolutionMode::delta_approximation);
}

std::vector<std::pair<double, double>> entropy_vs_delta_t(
    const InitialState& state, double mu, const std::vector<double>& delta_t_grid) {
  state.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double dt : delta_t_grid)
    if (!(dt >= 0.0 && dt <= two_pi + 1e-12))
      throw std::invalid_argument("entropy_vs_delta_t: grid value " + std::to_string(dt) +
                                  " outside [0, 2pi]");
  const int s = state.s1 + state.s2;
  const std::vector<double> amplitudes = initial_amplitudes(state.s1, state.s2, mu);
  const auto w = coefficient_matrix(s, mu);
  std::vector<double> theta(s + 1);
  for (int n = 0; n <= s; ++n) theta[n] = n;

  std::vector<std::pair<double, double>> rows;
  rows.reserve(delta_t_grid.size());
  for (double dt : delta_t_grid)
    rows.emplace_back(dt, entropy_of(spectrum_at(amplitudes, w, theta, dt)));
  return rows;
}

}  // namespace schmidt
