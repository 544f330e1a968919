#include "schmidt/cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "schmidt/core_model.hpp"
#include "schmidt/dynamics.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/oracle.hpp"
#include "schmidt/stationary.hpp"
#include "schmidt/verify.hpp"

namespace schmidt {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

// Shortest representation that round-trips to the same double.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& artifact, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << artifact;
    if (std::cout.fail()) throw IoError("failed to write to stdout");
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + output_path);
  out << artifact;
  out.flush();
  if (out.fail()) throw IoError("failed to write output file: " + output_path);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

// ---------------------------------------------------------------------------
// Parameter entry shared by stationary-style and dynamic commands: either a
// direct --mu, or the physical triple --A --B --C (masses optional), or a
// previously emitted diagonalize JSON via --from-json.

struct SystemEntry {
  std::optional<double> mu;
  std::optional<double> a, b, c;
  double m1 = 1.0, m2 = 1.0;
  std::string from_json;

  bool has_triple() const { return a && b && c; }

  void add_options(CLI::App* cmd, bool with_mu = true) {
    if (with_mu) cmd->add_option("--mu", mu, "mixing parameter tan(alpha), in [-1, 1]");
    cmd->add_option("--A", a, "potential curvature of oscillator 1");
    cmd->add_option("--B", b, "potential curvature of oscillator 2");
    cmd->add_option("--C", c, "bilinear coupling constant");
    cmd->add_option("--m1", m1, "mass of oscillator 1")->capture_default_str();
    cmd->add_option("--m2", m2, "mass of oscillator 2")->capture_default_str();
    cmd->add_option("--from-json", from_json,
                    "read m1,m2,a,b,c from a diagonalize JSON artifact");
  }

  void load_from_json() {
    std::ifstream in(from_json);
    if (!in) throw IoError("cannot open --from-json file: " + from_json);
    json j;
    try {
      in >> j;
      m1 = j.at("m1").get<double>();
      m2 = j.at("m2").get<double>();
      a = j.at("a").get<double>();
      b = j.at("b").get<double>();
      c = j.at("c").get<double>();
    } catch (const json::exception& err) {
      throw std::invalid_argument("--from-json: malformed artifact: " + std::string(err.what()));
    }
  }

  // Resolves to a diagonal form when the triple is present; otherwise mu only.
  std::optional<DiagonalForm> resolve_form() {
    if (!from_json.empty()) load_from_json();
    if (has_triple()) {
      CouplerSpec spec{m1, m2, *a, *b, *c};
      return diagonalize(canonicalize_masses(spec));
    }
    if (a || b || c)
      throw std::invalid_argument("--A, --B, --C must be given together");
    return std::nullopt;
  }

  double resolve_mu() {
    auto form = resolve_form();
    if (form) {
      if (mu) throw std::invalid_argument("give either --mu or the --A/--B/--C triple, not both");
      return form->mu;
    }
    if (!mu) throw std::invalid_argument("missing --mu (or the --A/--B/--C triple)");
    return *mu;
  }
};

// ---------------------------------------------------------------------------

json diagonal_form_json(const DiagonalForm& form, double delta) {
  json j;
  j["m1"] = form.source.m1;
  j["m2"] = form.source.m2;
  j["a"] = form.source.a;
  j["b"] = form.source.b;
  j["c"] = form.source.c;
  if (form.epsilon)
    j["epsilon"] = *form.epsilon;
  else
    j["epsilon"] = nullptr;
  j["mu"] = form.mu;
  j["alpha"] = form.alpha;
  j["a_prime"] = form.a_prime;
  j["b_prime"] = form.b_prime;
  j["k_param"] = form.k_param;
  j["eta"] = form.eta;
  j["delta"] = delta;
  return j;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

int cmd_diagonalize(const SystemEntry& entry_in, const std::string& format,
                    const std::string& output) {
  SystemEntry entry = entry_in;
  auto form = entry.resolve_form();
  if (!form) throw std::invalid_argument("diagonalize requires --A, --B and --C");
  const double delta = coupling_delta(form->source, *form);

  std::string artifact;
  if (format == "json") {
    artifact = render_json(diagonal_form_json(*form, delta));
  } else {
    std::string eps = form->epsilon ? format_double(*form->epsilon) : "";
    artifact = csv_row({"m1", "m2", "a", "b", "c", "epsilon", "mu", "alpha", "a_prime",
                        "b_prime", "k_param", "eta", "delta"});
    artifact += csv_row({format_double(form->source.m1), format_double(form->source.m2),
                         format_double(form->source.a), format_double(form->source.b),
                         format_double(form->source.c), eps, format_double(form->mu),
                         format_double(form->alpha), format_double(form->a_prime),
                         format_double(form->b_prime), format_double(form->k_param),
                         format_double(form->eta), format_double(delta)});
  }
  emit(artifact, output);
  return kExitOk;
}

int cmd_stationary(int n, int m, SystemEntry& entry, const std::string& format,
                   const std::string& output) {
  const double mu = entry.resolve_mu();
  const SchmidtSpectrum spectrum = schmidt_spectrum(n, m, mu);
  const EntanglementReport report = entanglement(spectrum);

  std::string artifact;
  if (format == "json") {
    json j;
    j["n"] = n;
    j["m"] = m;
    j["mu"] = mu;
    j["entropy"] = report.entropy;
    j["schmidt_k"] = report.schmidt_k;
    j["lambdas"] = spectrum.lambdas;
    artifact = render_json(j);
  } else {
    std::vector<std::string> header{"n", "m", "mu", "entropy", "schmidt_k"};
    std::vector<std::string> row{std::to_string(n), std::to_string(m), format_double(mu),
                                 format_double(report.entropy), format_double(report.schmidt_k)};
    for (std::size_t k = 0; k < spectrum.lambdas.size(); ++k) {
      header.push_back("lambda_" + std::to_string(k));
      row.push_back(format_double(spectrum.lambdas[k]));
    }
    artifact = csv_row(header) + csv_row(row);
  }
  emit(artifact, output);
  return kExitOk;
}

int cmd_sweep_mu(int n, int m, double mu_min, double mu_max, int steps,
                 const std::string& format, const std::string& output) {
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (!(mu_min > 0.0 && mu_min <= mu_max && mu_max <= 1.0))
    throw std::invalid_argument("--mu-min/--mu-max must satisfy 0 < mu-min <= mu-max <= 1");
  std::vector<double> grid(steps);
  if (steps == 1) {
    grid[0] = mu_min;
  } else {
    const double step = (mu_max - mu_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[i] = mu_min + i * step;
    grid.back() = mu_max;
  }
  const std::vector<SweepRow> rows = sweep_mu(n, m, grid);

  std::string artifact;
  if (format == "json") {
    json j;
    j["n"] = n;
    j["m"] = m;
    json jrows = json::array();
    for (const SweepRow& row : rows) {
      json r;
      r["mu"] = row.mu;
      r["entropy"] = row.entropy;
      r["schmidt_k"] = row.schmidt_k;
      jrows.push_back(std::move(r));
    }
    j["rows"] = std::move(jrows);
    artifact = render_json(j);
  } else {
    artifact = csv_row({"mu", "entropy", "schmidt_k"});
    for (const SweepRow& row : rows)
      artifact += csv_row({format_double(row.mu), format_double(row.entropy),
                           format_double(row.schmidt_k)});
  }
  emit(artifact, output);
  return kExitOk;
}

int cmd_evolve(int s1, int s2, SystemEntry& entry, int steps, double periods, bool exact_de,
               bool absolute_time, const std::string& format, const std::string& output) {
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (!(periods > 0.0)) throw std::invalid_argument("--periods must be > 0");

  std::vector<double> dt_grid(steps);
  for (int i = 0; i < steps; ++i)
    dt_grid[i] = 2.0 * std::numbers::pi * periods * i / steps;

  const InitialState state{s1, s2};
  auto form = entry.resolve_form();
  if ((exact_de || absolute_time) && !form)
    throw std::invalid_argument(
        "--exact-de and --absolute-time require the physical --A/--B/--C triple");

  EvolutionTrace trace;
  std::vector<double> dt_column = dt_grid;
  std::vector<double> t_column = dt_grid;
  if (!form) {
    if (!entry.mu) throw std::invalid_argument("missing --mu (or the --A/--B/--C triple)");
    trace = evolve_delta_t(state, *entry.mu, dt_grid);
  } else {
    if (entry.mu)
      throw std::invalid_argument("give either --mu or the --A/--B/--C triple, not both");
    const double delta = coupling_delta(form->source, *form);
    std::vector<double> t_grid(steps);
    if (delta == 0.0) {
      // Degenerate uncoupled limit: constant trace; dimensionless time is 0.
      for (int i = 0; i < steps; ++i) t_grid[i] = dt_grid[i];
      std::fill(dt_column.begin(), dt_column.end(), 0.0);
    } else {
      for (int i = 0; i < steps; ++i) t_grid[i] = dt_grid[i] / std::abs(delta);
    }
    t_column = t_grid;
    trace = evolve(state, *form, form->mu, t_grid,
                   exact_de ? EvolutionMode::exact_delta_e : EvolutionMode::delta_approximation);
  }

  const std::vector<double>& time_axis = absolute_time ? t_column : dt_column;
  const char* time_name = absolute_time ? "t" : "delta_t";

  std::string artifact;
  if (format == "json") {
    json j;
    j["s1"] = s1;
    j["s2"] = s2;
    j["mode"] = exact_de ? "exact-delta-e" : "delta-approximation";
    j[time_name] = time_axis;
    j["entropies"] = trace.entropies;
    j["spectra"] = trace.spectra;
    artifact = render_json(j);
  } else {
    std::vector<std::string> header{time_name, "entropy"};
    for (int k = 0; k <= s1 + s2; ++k) header.push_back("lambda_" + std::to_string(k));
    artifact = csv_row(header);
    for (int i = 0; i < steps; ++i) {
      std::vector<std::string> row{format_double(time_axis[i]),
                                   format_double(trace.entropies[i])};
      for (double lambda : trace.spectra[i]) row.push_back(format_double(lambda));
      artifact += csv_row(row);
    }
  }
  emit(artifact, output);
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, const std::string& format,
               const std::string& output) {
  const VerifyReport report = run_verification(options);
  for (const FamilyResult& family : report.families) {
    std::cerr << "[verify] " << family.family << ": "
              << (family.report.passed ? "pass" : "FAIL")
              << " (max_abs_error=" << format_double(family.report.max_abs_error)
              << ", checks=" << family.report.checks << ")\n";
  }

  std::string artifact;
  if (format == "json") {
    json j;
    j["max_order"] = report.options.max_order;
    j["tolerance"] = report.options.tolerance;
    j["quad_points"] = report.options.quad_points;
    j["all_passed"] = report.all_passed;
    json families = json::array();
    for (const FamilyResult& family : report.families) {
      json f;
      f["family"] = family.family;
      f["passed"] = family.report.passed;
      f["max_abs_error"] = family.report.max_abs_error;
      f["max_rel_error"] = family.report.max_rel_error;
      f["checks"] = family.report.checks;
      f["worst_case"] = family.report.worst_case;
      families.push_back(std::move(f));
    }
    j["families"] = std::move(families);
    artifact = render_json(j);
  } else {
    artifact = csv_row({"family", "passed", "max_abs_error", "max_rel_error", "checks",
                        "worst_case"});
    for (const FamilyResult& family : report.families)
      artifact += csv_row({family.family, family.report.passed ? "true" : "false",
                           format_double(family.report.max_abs_error),
                           format_double(family.report.max_rel_error),
                           std::to_string(family.report.checks), family.report.worst_case});
  }
  emit(artifact, output);
  return report.all_passed ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Schmidt modes and entanglement measures of two coupled harmonic oscillators"};
  app.name("schmidt-osc");
  app.require_subcommand(1);
  app.fallthrough();  // subcommands inherit it: --output/--format reach the parent

  std::string output;
  app.add_option("--output", output, "write the artifact to this file instead of stdout")
      ->group("Output");

  // diagonalize ------------------------------------------------------------
  auto* diag = app.add_subcommand("diagonalize", "decouple a physical spec into normal modes");
  SystemEntry diag_entry;
  diag_entry.add_options(diag, /*with_mu=*/false);
  std::string diag_format = "json";
  diag->add_option("--format", diag_format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // stationary --------------------------------------------------------------
  auto* stat = app.add_subcommand("stationary",
                                  "Schmidt spectrum and entanglement of one eigenstate");
  int stat_n = 0, stat_m = 0;
  stat->add_option("--n", stat_n, "mode-1 quantum number")->required();
  stat->add_option("--m", stat_m, "mode-2 quantum number")->required();
  SystemEntry stat_entry;
  stat_entry.add_options(stat);
  std::string stat_format = "json";
  stat->add_option("--format", stat_format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // sweep-mu ----------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep-mu", "entropy and Schmidt parameter over a mu grid");
  int sweep_n = 0, sweep_m = 0, sweep_steps = 20;
  double mu_min = 0.05, mu_max = 1.0;
  sweep->add_option("--n", sweep_n, "mode-1 quantum number")->required();
  sweep->add_option("--m", sweep_m, "mode-2 quantum number")->required();
  sweep->add_option("--mu-min", mu_min, "first grid value")->capture_default_str();
  sweep->add_option("--mu-max", mu_max, "last grid value")->capture_default_str();
  sweep->add_option("--steps", sweep_steps, "number of grid points")->capture_default_str();
  std::string sweep_format = "csv";
  sweep->add_option("--format", sweep_format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // evolve --------------------------------------------------------------
  auto* evo = app.add_subcommand("evolve", "time-dependent Schmidt modes of a product state");
  int evo_s1 = 0, evo_s2 = 0, evo_steps = 256;
  double evo_periods = 1.0;
  bool exact_de = false, absolute_time = false;
  evo->add_option("--s1", evo_s1, "oscillator-1 quantum number at t=0")->required();
  evo->add_option("--s2", evo_s2, "oscillator-2 quantum number at t=0")->required();
  SystemEntry evo_entry;
  evo_entry.add_options(evo);
  evo->add_option("--steps", evo_steps, "number of time samples")->capture_default_str();
  evo->add_option("--periods", evo_periods, "number of 2*pi/delta periods to cover")
      ->capture_default_str();
  evo->add_flag("--exact-de", exact_de, "use exact level differences instead of delta*n");
  evo->add_flag("--absolute-time", absolute_time, "emit absolute t instead of delta*t");
  std::string evo_format = "csv";
  evo->add_option("--format", evo_format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // verify --------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "run the brute-force oracle across all families");
  VerifyOptions verify_options;
  ver->add_option("--max-order", verify_options.max_order, "ceiling on n+m / s1+s2")
      ->capture_default_str();
  ver->add_option("--tolerance", verify_options.tolerance, "pass/fail threshold")
      ->capture_default_str();
  ver->add_option("--quad-points", verify_options.quad_points,
                  "fixed quadrature order (0 = automatic)")
      ->capture_default_str();
  std::string verify_format = "json";
  ver->add_option("--format", verify_format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (diag->parsed()) return cmd_diagonalize(diag_entry, diag_format, output);
    if (stat->parsed()) return cmd_stationary(stat_n, stat_m, stat_entry, stat_format, output);
    if (sweep->parsed())
      return cmd_sweep_mu(sweep_n, sweep_m, mu_min, mu_max, sweep_steps, sweep_format, output);
    if (evo->parsed())
      return cmd_evolve(evo_s1, evo_s2, evo_entry, evo_steps, evo_periods, exact_de,
                        absolute_time, evo_format, output);
    if (ver->parsed()) return cmd_verify(verify_options, verify_format, output);
    return kExitUsage;
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);  // prints the help text of the requested (sub)command
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const IoError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitIo;
  } catch (const numerical_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace schmidt
