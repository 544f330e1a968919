#include "schmidt/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schmidt {

void CouplerSpec::validate() const {
  if (!(m1 > 0.0) || !(m2 > 0.0))
    throw std::invalid_argument("CouplerSpec: masses must be positive (m1=" + std::to_string(m1) +
                                ", m2=" + std::to_string(m2) + ")");
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("CouplerSpec: curvatures must be positive (A=" +
                                std::to_string(a) + ", B=" + std::to_string(b) + ")");
  if (!(4.0 * a * b - c * c > 0.0))
    throw std::invalid_argument("CouplerSpec: unbound system, requires 4AB - C^2 > 0 (got " +
                                std::to_string(4.0 * a * b - c * c) + ")");
}

CouplerSpec canonicalize_masses(const CouplerSpec& spec) {
  spec.validate();
  if (spec.m1 == 1.0 && spec.m2 == 1.0) return spec;
  // x_i -> x_i * sqrt(m_i/M) maps the kinetic term to p^2/(2M) per mode and
  // scales each curvature by M/m_i; the cross term is invariant.
  const double ratio = std::sqrt(spec.m2 / spec.m1);
  CouplerSpec canonical;
  canonical.m1 = 1.0;
  canonical.m2 = 1.0;
  canonical.a = spec.a * ratio;
  canonical.b = spec.b / ratio;
  canonical.c = spec.c;
  canonical.validate();
  return canonical;
}

DiagonalForm diagonalize(const CouplerSpec& spec) {
  spec.validate();
  if (spec.m1 != 1.0 || spec.m2 != 1.0)
    throw std::invalid_argument("diagonalize: spec must be canonical (m1 = m2 = 1); "
                                "apply canonicalize_masses first");

  DiagonalForm form;
  form.source = spec;
  form.k_param = std::sqrt(spec.a * spec.b - 0.25 * spec.c * spec.c);

  if (spec.c == 0.0) {
    // Uncoupled: the rotation is the identity by convention.
    form.epsilon.reset();
    form.mu = 0.0;
    form.alpha = 0.0;
    form.a_prime = spec.a;
    form.b_prime = spec.b;
  } else {
    const double eps = (spec.b - spec.a) / spec.c;
    form.epsilon = eps;
    if (eps == 0.0) {
      form.mu = 1.0;  // resonant convention; downstream spectra depend on mu^2 only
    } else {
      // sign(eps) * (sqrt(eps^2+1) - |eps|), written without cancellation.
      const double mag = 1.0 / (std::abs(eps) + std::hypot(eps, 1.0));
      form.mu = eps > 0.0 ? mag : -mag;
    }
    form.alpha = std::atan(form.mu);
    form.a_prime = spec.a - 0.5 * spec.c * form.mu;
    form.b_prime = spec.b + 0.5 * spec.c * form.mu;
  }

  if (spec.a == spec.b) {
    // exp(eta) with the sign factor (A-B)/|A-B| taken as 0 at A = B.
    form.eta = std::log((spec.a + spec.b) / (2.0 * form.k_param));
  } else {
    const double diff = spec.a - spec.b;
    const double sign = diff > 0.0 ? 1.0 : -1.0;
    form.eta = std::log((spec.a + spec.b + sign * std::hypot(diff, spec.c)) /
                        std::sqrt(4.0 * spec.a * spec.b - spec.c * spec.c));
  }
  return form;
}

EnergyLevel energy(const DiagonalForm& form, int n, int m) {
  if (n < 0 || m < 0)
    throw std::invalid_argument("energy: quantum numbers must be >= 0 (n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
  EnergyLevel level;
  level.n = n;
  level.m = m;
  level.value = std::sqrt(form.a_prime) * (n + 0.5) + std::sqrt(form.b_prime) * (m + 0.5);
  return level;
}

double coupling_delta(const CouplerSpec& spec, const DiagonalForm& form) {
  if (spec.c == 0.0) return 0.0;
  const double eps = form.epsilon.value_or(0.0);
  return spec.c * (eps + form.mu) / (std::sqrt(form.a_prime) + std::sqrt(form.b_prime));
}

}  // namespace schmidt
