#pragma once

#include <string>
#include <vector>

#include "schmidt/oracle.hpp"

namespace schmidt {

struct VerifyOptions {
  int max_order = 12;      // ceiling on n+m (coefficients) and s1+s2 (dynamics)
  double tolerance = 1e-8;
  int quad_points = 0;     // 0 = automatic (max(n,m,k,p) + 8 per combination)
};

struct FamilyResult {
  std::string family;
  oracle::ComparisonReport report;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<FamilyResult> families;
  bool all_passed = false;
};

// Runs the oracle across every check family:
//   coefficients   closed form vs quadrature overlaps, n+m <= max_order
//   spectra        closed form vs grid RDM eigenvalues, n+m <= min(max_order, 8)
//   closed_form_k  hypergeometric K vs inverse purity, m <= 20
//   dynamics       phase-sum evolution vs dense unitary, s1+s2 <= min(max_order, 10)
//   convergence    exact-wavefunction SVD approaching the weak-coupling
//                  spectrum as the coupling shrinks (deviations must decrease)
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace schmidt
