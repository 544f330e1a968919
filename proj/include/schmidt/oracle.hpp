#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "schmidt/core_model.hpp"
#include "schmidt/dynamics.hpp"
#include "schmidt/special_functions.hpp"

// Brute-force verification routes, deliberately independent of the closed
// forms they certify: tensor-product quadrature for the expansion
// coefficients, grid reduced-density-matrix eigendecomposition and grid SVD
// for the Schmidt spectra, and dense matrix-vector products for the dynamics.
namespace schmidt::oracle {

struct GridSpec {
  double half_width = 0.0;  // spatial extent in x1 and x2
  int points_per_axis = 512;

  // Default per the grid policy: 2*sqrt(2*max(n,m)+1) + 4, 512 points.
  static GridSpec for_modes(int n, int m);
  // Throws unless the grid covers the classical region of the given quantum
  // number plus Gaussian tails, with at least 64 points per axis.
  void validate(int max_quantum) const;
};

struct ComparisonReport {
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::string worst_case;
  double tolerance = 0.0;
  bool passed = false;  // max_abs_error <= tolerance
  std::size_t checks = 0;
};

// <Psi_{n,m} | phi_k phi_p> by tensor-product Gauss-Hermite quadrature.
// Requires rule.order >= max(n,m,k,p) + 8; flags non-convergence when
// doubling the order moves the result by more than 1e-10.
double overlap_coefficient_numeric(int n, int m, int k, int p, double mu,
                                   const QuadratureRule& rule);

// Eigenvalues (descending) of the discretized reduced density matrix of the
// weak-coupling wavefunction, contracted with trapezoidal weights.
std::vector<double> rdm_spectrum_numeric(int n, int m, double mu, const GridSpec& grid);

// Schmidt eigenvalues (descending, unit sum) of the exact eigenfunction with
// a_prime != b_prime, sampled on the grid and decomposed by SVD.
std::vector<double> exact_wavefunction_svd(const CouplerSpec& spec, int n, int m,
                                           const GridSpec& grid);

// Direct phase evolution in the decoupled eigenbasis; one spectrum per time.
std::vector<std::vector<double>> unitary_evolution_numeric(const InitialState& state, double mu,
                                                           double delta,
                                                           const std::vector<double>& time_grid);

// Normalized sigma^2 of a sampled two-coordinate amplitude (descending).
std::vector<double> grid_svd_spectrum(const std::function<double(double, double)>& psi,
                                      const GridSpec& grid);

}  // namespace schmidt::oracle
