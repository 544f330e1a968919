#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "schmidt/cli_app.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("schmidt-osc-test-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run(std::vector<std::string> args) { return schmidt::run_cli(std::move(args)); }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("cli: diagonalize emits the frozen JSON fields") {
  TempDir tmp;
  const std::string out = tmp.file("diag.json");
  CHECK(run({"diagonalize", "--A", "2", "--B", "1", "--C", "0.2", "--output", out}) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("m1").get<double>() == 1.0);
  CHECK(j.at("epsilon").get<double>() == -5.0);
  CHECK(j.at("mu").get<double>() == doctest::Approx(-0.09901951359278483).epsilon(1e-14));
  CHECK(j.at("a_prime").get<double>() == doctest::Approx(2.0099019513592785).epsilon(1e-14));
  CHECK(j.at("b_prime").get<double>() == doctest::Approx(0.9900980486407215).epsilon(1e-14));
  CHECK(j.at("k_param").get<double>() == doctest::Approx(std::sqrt(1.99)).epsilon(1e-14));
  CHECK(j.at("delta").get<double>() == doctest::Approx(-0.42267340118207476).epsilon(1e-13));
}

TEST_CASE("cli: diagonalize reports a null epsilon for the uncoupled system") {
  TempDir tmp;
  const std::string out = tmp.file("diag0.json");
  CHECK(run({"diagonalize", "--A", "1.5", "--B", "0.9", "--C", "0", "--output", out}) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("epsilon").is_null());
  CHECK(j.at("mu").get<double>() == 0.0);
  CHECK(j.at("delta").get<double>() == 0.0);
}

TEST_CASE("cli: diagonalize canonicalizes unequal masses first") {
  TempDir tmp;
  const std::string out = tmp.file("diag-mass.json");
  CHECK(run({"diagonalize", "--m1", "4", "--m2", "1", "--A", "1", "--B", "1", "--C", "0",
             "--output", out}) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("m1").get<double>() == 1.0);
  CHECK(j.at("a").get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(j.at("b").get<double>() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("cli: sweep-mu CSV shape matches the contract") {
  TempDir tmp;
  const std::string out = tmp.file("sweep.csv");
  CHECK(run({"sweep-mu", "--n", "0", "--m", "5", "--mu-min", "0.05", "--mu-max", "1.0",
             "--steps", "20", "--format", "csv", "--output", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 21);
  CHECK(lines[0] == "mu,entropy,schmidt_k");
  CHECK(lines[1].substr(0, 5) == "0.05,");
  CHECK(lines[20].substr(0, 2) == "1,");
  const std::string text = slurp(out);
  CHECK(text.find("\r") == std::string::npos);  // \n line endings only
  CHECK(text.back() == '\n');
}

TEST_CASE("cli: evolve CSV has the documented header and a separable first row") {
  TempDir tmp;
  const std::string out = tmp.file("evolve.csv");
  CHECK(run({"evolve", "--s1", "0", "--s2", "10", "--mu", "1", "--steps", "256",
             "--periods", "1", "--format", "csv", "--output", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 257);
  CHECK(lines[0].substr(0, 24) == "delta_t,entropy,lambda_0");
  CHECK(lines[0].find("lambda_10") != std::string::npos);
  // First row: delta_t = 0 and S(0) = 0 within 1e-12, surfaced end to end.
  CHECK(lines[1].substr(0, 2) == "0,");
  const std::string entropy_cell = lines[1].substr(2, lines[1].find(',', 2) - 2);
  CHECK(std::abs(std::stod(entropy_cell)) <= 1e-12);
}

TEST_CASE("cli: identical invocations produce byte-identical artifacts") {
  TempDir tmp;
  const std::string first = tmp.file("a.csv");
  const std::string second = tmp.file("b.csv");
  const std::vector<std::string> cmd{"sweep-mu", "--n", "1", "--m", "2", "--mu-min", "0.1",
                                     "--mu-max", "0.9", "--steps", "9", "--format", "csv"};
  auto with_output = [&](const std::string& path) {
    auto full = cmd;
    full.push_back("--output");
    full.push_back(path);
    return full;
  };
  CHECK(run(with_output(first)) == 0);
  CHECK(run(with_output(second)) == 0);
  CHECK(slurp(first) == slurp(second));

  const std::string evo1 = tmp.file("e1.csv");
  const std::string evo2 = tmp.file("e2.csv");
  for (const std::string& path : {evo1, evo2})
    CHECK(run({"evolve", "--s1", "2", "--s2", "3", "--mu", "0.5", "--steps", "32",
               "--output", path}) == 0);
  CHECK(slurp(evo1) == slurp(evo2));
}

TEST_CASE("cli: golden sweep-mu artifact") {
  TempDir tmp;
  const std::string out = tmp.file("sweep.csv");
  CHECK(run({"sweep-mu", "--n", "0", "--m", "5", "--mu-min", "0.05", "--mu-max", "1.0",
             "--steps", "20", "--format", "csv", "--output", out}) == 0);
  CHECK(slurp(out) == slurp(std::string(SCHMIDT_TEST_DIR) + "/golden/sweep_n0_m5.csv"));
}

TEST_CASE("cli: golden evolve artifact") {
  TempDir tmp;
  const std::string out = tmp.file("evolve.csv");
  CHECK(run({"evolve", "--s1", "0", "--s2", "10", "--mu", "1", "--steps", "256", "--periods",
             "1", "--format", "csv", "--output", out}) == 0);
  CHECK(slurp(out) == slurp(std::string(SCHMIDT_TEST_DIR) + "/golden/evolve_s1_0_s2_10_mu1.csv"));
}

TEST_CASE("cli: diagonalize JSON round-trips through --from-json") {
  TempDir tmp;
  const std::string diag = tmp.file("diag.json");
  CHECK(run({"diagonalize", "--A", "1.7", "--B", "1.1", "--C", "0.45", "--output", diag}) == 0);

  const std::string direct = tmp.file("direct.csv");
  const std::string via_json = tmp.file("via.csv");
  CHECK(run({"stationary", "--n", "1", "--m", "2", "--A", "1.7", "--B", "1.1", "--C", "0.45",
             "--format", "csv", "--output", direct}) == 0);
  CHECK(run({"stationary", "--n", "1", "--m", "2", "--from-json", diag, "--format", "csv",
             "--output", via_json}) == 0);
  CHECK(slurp(direct) == slurp(via_json));

  const std::string evo_direct = tmp.file("evo-direct.csv");
  const std::string evo_via = tmp.file("evo-via.csv");
  CHECK(run({"evolve", "--s1", "1", "--s2", "2", "--A", "1.7", "--B", "1.1", "--C", "0.45",
             "--steps", "16", "--output", evo_direct}) == 0);
  CHECK(run({"evolve", "--s1", "1", "--s2", "2", "--from-json", diag, "--steps", "16",
             "--output", evo_via}) == 0);
  CHECK(slurp(evo_direct) == slurp(evo_via));
}

TEST_CASE("cli: stationary accepts either --mu or the physical triple") {
  TempDir tmp;
  const std::string out = tmp.file("stat.json");
  CHECK(run({"stationary", "--n", "0", "--m", "3", "--mu", "1", "--output", out}) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("schmidt_k").get<double>() == doctest::Approx(3.2).epsilon(1e-13));
  REQUIRE(j.at("lambdas").size() == 4);
  CHECK(j.at("lambdas")[1].get<double>() == doctest::Approx(0.375).epsilon(1e-13));

  // A = B so mu = 1: same spectrum through the physical entry point.
  const std::string out2 = tmp.file("stat2.json");
  CHECK(run({"stationary", "--n", "0", "--m", "3", "--A", "1", "--B", "1", "--C", "0.2",
             "--output", out2}) == 0);
  const json j2 = json::parse(slurp(out2));
  CHECK(j2.at("mu").get<double>() == 1.0);
  CHECK(j2.at("entropy").get<double>() == doctest::Approx(j.at("entropy").get<double>()));
}

TEST_CASE("cli: evolve with the physical triple, exact phases and absolute time") {
  TempDir tmp;
  const std::string approx = tmp.file("approx.csv");
  const std::string exact = tmp.file("exact.csv");
  CHECK(run({"evolve", "--s1", "1", "--s2", "2", "--A", "1", "--B", "1.02", "--C", "0.05",
             "--steps", "24", "--output", approx}) == 0);
  CHECK(run({"evolve", "--s1", "1", "--s2", "2", "--A", "1", "--B", "1.02", "--C", "0.05",
             "--steps", "24", "--exact-de", "--output", exact}) == 0);

  // The level spacing is exactly linear in n, so the spectra agree far below
  // the documented 5e-3 figure-parity tolerance.
  const auto a_lines = split_lines(slurp(approx));
  const auto e_lines = split_lines(slurp(exact));
  REQUIRE(a_lines.size() == e_lines.size());
  for (std::size_t row = 1; row < a_lines.size(); ++row) {
    std::istringstream a_in(a_lines[row]), e_in(e_lines[row]);
    std::string a_cell, e_cell;
    int col = 0;
    while (std::getline(a_in, a_cell, ',') && std::getline(e_in, e_cell, ',')) {
      CHECK(std::abs(std::stod(a_cell) - std::stod(e_cell)) <= 1e-10);
      ++col;
    }
    CHECK(col == 2 + 4);  // delta_t, entropy, lambda_0..lambda_3
  }

  const std::string absolute = tmp.file("absolute.csv");
  CHECK(run({"evolve", "--s1", "0", "--s2", "1", "--A", "1", "--B", "1.02", "--C", "0.05",
             "--steps", "8", "--absolute-time", "--output", absolute}) == 0);
  const auto t_lines = split_lines(slurp(absolute));
  CHECK(t_lines[0].substr(0, 2) == "t,");
  // delta(1, 1.02, 0.05) ~ 0.05, so one period in t spans ~ 2 pi / 0.05.
  const double t_last = std::stod(t_lines[8].substr(0, t_lines[8].find(',')));
  CHECK(t_last > 100.0);
}

TEST_CASE("cli: evolve degenerates gracefully for an uncoupled system") {
  TempDir tmp;
  const std::string out = tmp.file("uncoupled.csv");
  CHECK(run({"evolve", "--s1", "1", "--s2", "0", "--A", "1", "--B", "1.5", "--C", "0",
             "--steps", "4", "--output", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 5);
  // delta*t = 0 everywhere, S = 0, and the state stays pinned at lambda_1 = 1.
  for (std::size_t row = 1; row < lines.size(); ++row) CHECK(lines[row] == "0,0,0,1");
}

TEST_CASE("cli: usage and validation failures exit 2") {
  CHECK(run({"sweep-mu", "--n", "0", "--m", "5", "--bogus-flag", "1"}) == 2);  // unknown key
  CHECK(run({"stationary", "--n", "0", "--m", "3", "--mu", "1.5"}) == 2);      // |mu| > 1
  CHECK(run({"stationary", "--n", "0", "--m", "3"}) == 2);                     // no mu source
  CHECK(run({"stationary", "--n", "0", "--m", "3", "--mu", "0.5", "--A", "1"}) == 2);
  CHECK(run({"sweep-mu", "--n", "0", "--m", "5", "--mu-min", "0", "--mu-max", "1"}) == 2);
  CHECK(run({"evolve", "--s1", "0", "--s2", "1", "--mu", "1", "--exact-de"}) == 2);
  CHECK(run({"diagonalize", "--A", "1", "--B", "1", "--C", "2"}) == 2);  // unbound
  CHECK(run({"nonsense-command"}) == 2);
  CHECK(run({}) == 2);
}

TEST_CASE("cli: verify fails honestly at an unreachable tolerance") {
  // Double precision cannot push the oracle comparisons to 1e-15.
  TempDir tmp;
  const std::string out = tmp.file("verify.json");
  CHECK(run({"verify", "--max-order", "4", "--tolerance", "1e-15", "--output", out}) == 4);
  const json j = json::parse(slurp(out));
  CHECK_FALSE(j.at("all_passed").get<bool>());
  bool some_family_failed = false;
  for (const auto& family : j.at("families"))
    if (!family.at("passed").get<bool>()) some_family_failed = true;
  CHECK(some_family_failed);
}

TEST_CASE("cli: verify at max-order 0 passes on the trivial sector") {
  TempDir tmp;
  const std::string out = tmp.file("verify0.csv");
  CHECK(run({"verify", "--max-order", "0", "--format", "csv", "--output", out}) == 0);
  const auto lines = split_lines(slurp(out));
  REQUIRE(lines.size() == 6);  // header + five families
  CHECK(lines[0] == "family,passed,max_abs_error,max_rel_error,checks,worst_case");
}

TEST_CASE("cli: unwritable output path exits 3") {
  CHECK(run({"diagonalize", "--A", "1", "--B", "1", "--C", "0.1", "--output",
             "/nonexistent-dir/artifact.json"}) == 3);
  CHECK(run({"stationary", "--n", "0", "--m", "1", "--from-json",
             "/nonexistent-dir/missing.json"}) == 3);
}

TEST_CASE("cli: help is available and exits 0") {
  CHECK(run({"--help"}) == 0);
}
