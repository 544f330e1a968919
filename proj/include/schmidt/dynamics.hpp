#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "schmidt/core_model.hpp"

namespace schmidt {

// Uncoupled product state |s1>|s2> at t = 0.
struct InitialState {
  int s1 = 0;
  int s2 = 0;
  void validate() const;
};

enum class EvolutionMode {
  exact_delta_e,        // phases from the full level differences
  delta_approximation,  // phases delta * n
};

struct EvolutionTrace {
  std::vector<double> times;  // t, or dimensionless delta*t for the delta_t API
  std::vector<std::vector<double>> spectra;  // per time: lambda_0..lambda_{s1+s2}
  std::vector<double> entropies;
  EvolutionMode mode = EvolutionMode::delta_approximation;
};

// a_n = A^{s1,s2}_{n, s1+s2-n}; unit norm within 1e-10.
std::vector<double> initial_amplitudes(int s1, int s2, double mu);

// c_{k,p}(t); exactly 0 unless k + p = s1 + s2.
std::complex<double> evolved_coefficient(int k, int p, double t, const InitialState& state,
                                         const DiagonalForm& form, EvolutionMode mode);

// Time grid must be strictly increasing with first entry 0.
EvolutionTrace evolve(const InitialState& state, const DiagonalForm& form, double mu,
                      const std::vector<double>& time_grid, EvolutionMode mode);

// Dimensionless variant: the grid is delta*t directly (delta-approximation).
EvolutionTrace evolve_delta_t(const InitialState& state, double mu,
                              const std::vector<double>& delta_t_grid);

// (delta*t, S) rows; grid values must lie in [0, 2*pi].
std::vector<std::pair<double, double>> entropy_vs_delta_t(
    const InitialState& state, double mu, const std::vector<double>& delta_t_grid);

}  // namespace schmidt
