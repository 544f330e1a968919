#pragma once

#include <vector>

namespace schmidt {

// Ceiling on n + m (and s1 + s2 in the dynamic problem); the exact-integer
// binomial tables and the compensated sums are sized for this.
inline constexpr int kMaxTotalQuanta = 64;

struct ModeIndex {
  int n = 0;  // decoupled mode-1 quantum number
  int m = 0;  // decoupled mode-2 quantum number
  void validate() const;
};

// Schmidt modes lambda_0..lambda_{n+m} of a stationary eigenstate.
struct SchmidtSpectrum {
  std::vector<double> lambdas;  // indexed by subsystem-1 occupation k
  double mu = 0.0;
  ModeIndex source;
};

struct EntanglementReport {
  double entropy = 0.0;    // von Neumann entropy, natural log
  double schmidt_k = 1.0;  // inverse purity
};

struct SweepRow {
  double mu = 0.0;
  double entropy = 0.0;
  double schmidt_k = 0.0;
};

// Expansion coefficient A^{k,p}_{n,m}(mu) of the weak-coupling eigenstate over
// the uncoupled product basis; exactly 0 unless k + p = n + m.
double coefficient(int n, int m, int k, int p, double mu);

// lambda_k = |A^{k,n+m-k}_{n,m}|^2, renormalized only when the raw sum is
// within 1e-8 of 1 (otherwise throws numerical_error).
SchmidtSpectrum schmidt_spectrum(int n, int m, double mu);

EntanglementReport entanglement(const SchmidtSpectrum& spectrum);

// Closed form for the n = 0 Schmidt parameter:
// K = (1 + mu^2)^{2m} / 2F1(-m, -m; 1; mu^4).
double schmidt_k_closed_form(int m, double mu);

// One (mu, S, K) row per grid point; grid values must lie in (0, 1].
std::vector<SweepRow> sweep_mu(int n, int m, const std::vector<double>& mu_grid);

}  // namespace schmidt
