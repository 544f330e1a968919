#pragma once

#include <optional>

namespace schmidt {

// Physical input: two harmonic oscillators with a bilinear coupling term,
// in units hbar = 1, M = sqrt(m1*m2) = 1.
struct CouplerSpec {
  double m1 = 1.0;
  double m2 = 1.0;
  double a = 1.0;  // potential curvature of oscillator 1
  double b = 1.0;  // potential curvature of oscillator 2
  double c = 0.0;  // bilinear coupling constant

  // Throws std::invalid_argument unless m1,m2 > 0, a,b > 0 and 4ab - c^2 > 0.
  void validate() const;
};

// Decoupled normal-mode description of a canonical (m1 = m2 = 1) spec.
struct DiagonalForm {
  CouplerSpec source;             // the canonical spec this was derived from
  std::optional<double> epsilon;  // (b - a)/c; empty when c = 0
  double mu = 0.0;                // tan(alpha), |mu| <= 1
  double alpha = 0.0;             // normal-mode rotation angle, [-pi/4, pi/4]
  double a_prime = 0.0;           // decoupled curvature of mode 1
  double b_prime = 0.0;           // decoupled curvature of mode 2
  double k_param = 0.0;           // sqrt(a*b - c^2/4)
  double eta = 0.0;               // asymmetry exponent, exp(eta) = a_prime/k_param
};

struct EnergyLevel {
  int n = 0;
  int m = 0;
  double value = 0.0;  // sqrt(a_prime)(n + 1/2) + sqrt(b_prime)(m + 1/2)
};

// Rescales unequal masses to the m1 = m2 = 1 form, preserving the decoupled
// frequency set in M = 1 units. Identity when the masses already equal 1.
CouplerSpec canonicalize_masses(const CouplerSpec& spec);

// Normal-mode decomposition of a canonical spec.
//   c == 0        -> mu = 0, alpha = 0 (identity rotation)
//   a == b, c != 0 -> mu = +1, alpha = pi/4
DiagonalForm diagonalize(const CouplerSpec& spec);

EnergyLevel energy(const DiagonalForm& form, int n, int m);

// Coupling frequency delta = c(epsilon + mu)/(sqrt(a') + sqrt(b')); the
// level-spacing difference that drives the entanglement oscillations.
double coupling_delta(const CouplerSpec& spec, const DiagonalForm& form);

}  // namespace schmidt
