#include "schmidt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "schmidt/stationary.hpp"

namespace schmidt {

namespace {

using oracle::ComparisonReport;

struct ErrorTracker {
  ComparisonReport report;

  void record(double reference, double actual, const std::string& where) {
    const double abs_err = std::abs(actual - reference);
    const double scale = std::max(std::abs(reference), std::abs(actual));
    // Below the quadrature noise floor a relative error is meaningless.
    const double rel_err = scale > 1e-12 ? abs_err / scale : 0.0;
    if (abs_err > report.max_abs_error) {
      report.max_abs_error = abs_err;
      report.worst_case = where;
    }
    report.max_rel_error = std::max(report.max_rel_error, rel_err);
    ++report.checks;
  }

  ComparisonReport finish(double tolerance) {
    report.tolerance = tolerance;
    report.passed = report.max_abs_error <= tolerance;
    return report;
  }
};

std::string tag(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : fields) {
    if (!first) out << ' ';
    first = false;
    out << name << '=' << value;
  }
  return out.str();
}

ComparisonReport check_coefficients(const VerifyOptions& opts) {
  ErrorTracker tracker;
  for (int total = 0; total <= opts.max_order; ++total) {
    for (int n = 0; n <= total; ++n) {
      const int m = total - n;
      for (int k = 0; k <= total; ++k) {
        const int p = total - k;
        const int order = opts.quad_points > 0 ? opts.quad_points
                                               : std::max({n, m, k, p}) + 8;
        const QuadratureRule rule = gauss_hermite(order);
        for (double mu : {0.1, 0.5, 0.9, 1.0}) {
          const double closed = coefficient(n, m, k, p, mu);
          const double numeric = oracle::overlap_coefficient_numeric(n, m, k, p, mu, rule);
          tracker.record(numeric, closed,
                         tag({{"n", double(n)}, {"m", double(m)}, {"k", double(k)}, {"mu", mu}}));
        }
      }
    }
  }
  return tracker.finish(opts.tolerance);
}

ComparisonReport check_spectra(const VerifyOptions& opts) {
  ErrorTracker tracker;
  const int limit = std::min(opts.max_order, 8);
  for (int total = 0; total <= limit; ++total) {
    for (int n = 0; n <= total; ++n) {
      const int m = total - n;
      const oracle::GridSpec grid = oracle::GridSpec::for_modes(n, m);
      for (double mu : {0.3, 0.7, 1.0}) {
        std::vector<double> closed = schmidt_spectrum(n, m, mu).lambdas;
        std::sort(closed.begin(), closed.end(), std::greater<>());
        const std::vector<double> numeric = oracle::rdm_spectrum_numeric(n, m, mu, grid);
        for (int i = 0; i <= total; ++i)
          tracker.record(numeric[i], closed[i],
                         tag({{"n", double(n)}, {"m", double(m)}, {"rank", double(i)}, {"mu", mu}}));
      }
    }
  }
  return tracker.finish(opts.tolerance);
}

ComparisonReport check_closed_form_k(const VerifyOptions& opts) {
  ErrorTracker tracker;
  for (int m = 0; m <= 20; ++m) {
    for (double mu : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
      const double closed = schmidt_k_closed_form(m, mu);
      const double from_spectrum = entanglement(schmidt_spectrum(0, m, mu)).schmidt_k;
      tracker.record(from_spectrum, closed, tag({{"m", double(m)}, {"mu", mu}}));
    }
  }
  return tracker.finish(opts.tolerance);
}

ComparisonReport check_dynamics(const VerifyOptions& opts) {
  ErrorTracker tracker;
  constexpr int kTimes = 32;
  std::vector<double> grid(kTimes);
  for (int i = 0; i < kTimes; ++i) grid[i] = 2.0 * std::numbers::pi * i / kTimes;
  const int limit = std::min(opts.max_order, 10);
  for (int total = 0; total <= limit; ++total) {
    for (int s1 = 0; s1 <= total; ++s1) {
      const InitialState state{s1, total - s1};
      for (double mu : {1.0, 0.5, 0.1}) {
        const EvolutionTrace trace = evolve_delta_t(state, mu, grid);
        const auto reference = oracle::unitary_evolution_numeric(state, mu, 1.0, grid);
        for (int t = 0; t < kTimes; ++t)
          for (int k = 0; k <= total; ++k)
            tracker.record(reference[t][k], trace.spectra[t][k],
                           tag({{"s1", double(s1)}, {"s2", double(total - s1)},
                                {"k", double(k)}, {"mu", mu}, {"dt", grid[t]}}));
      }
    }
  }
  return tracker.finish(opts.tolerance);
}

ComparisonReport check_convergence(const VerifyOptions&) {
  constexpr int n = 0;
  constexpr int m = 2;
  std::vector<double> reference = schmidt_spectrum(n, m, 1.0).lambdas;
  std::sort(reference.begin(), reference.end(), std::greater<>());

  ComparisonReport report;
  std::ostringstream detail;
  double previous = 0.0;
  double worst_increase = 0.0;
  const oracle::GridSpec grid = oracle::GridSpec::for_modes(n, m);
  const double couplings[] = {1e-1, 1e-2, 1e-3, 1e-4};
  for (std::size_t i = 0; i < std::size(couplings); ++i) {
    const CouplerSpec spec{1.0, 1.0, 1.0, 1.0, couplings[i]};
    const std::vector<double> lambdas = oracle::exact_wavefunction_svd(spec, n, m, grid);
    double deviation = 0.0;
    for (int r = 0; r <= n + m; ++r)
      deviation = std::max(deviation, std::abs(lambdas[r] - reference[r]));
    if (i > 0) worst_increase = std::max(worst_increase, deviation - previous);
    previous = deviation;
    if (i > 0) detail << "; ";
    detail << "C=" << couplings[i] << " dev=" << deviation;
    ++report.checks;
  }
  // Passes iff the deviation shrinks monotonically as the coupling shrinks.
  report.max_abs_error = std::max(0.0, worst_increase);
  report.max_rel_error = report.max_abs_error;
  report.worst_case = detail.str();
  report.tolerance = 0.0;
  report.passed = worst_increase <= 0.0;
  return report;
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.max_order < 0 || options.max_order > kMaxTotalQuanta)
    throw std::invalid_argument("verify: max-order must be in [0, " +
                                std::to_string(kMaxTotalQuanta) + "]");
  if (!(options.tolerance > 0.0))
    throw std::invalid_argument("verify: tolerance must be positive");
  if (options.quad_points != 0 && (options.quad_points < 1 || options.quad_points > 256))
    throw std::invalid_argument("verify: quad-points must be in [1, 256] (or 0 for automatic)");

  VerifyReport report;
  report.options = options;
  report.families.push_back({"coefficients", check_coefficients(options)});
  report.families.push_back({"spectra", check_spectra(options)});
  report.families.push_back({"closed_form_k", check_closed_form_k(options)});
  report.families.push_back({"dynamics", check_dynamics(options)});
  report.families.push_back({"convergence", check_convergence(options)});
  report.all_passed = std::all_of(report.families.begin(), report.families.end(),
                                  [](const FamilyResult& f) { return f.report.passed; });
  return report;
}

}  // namespace schmidt
