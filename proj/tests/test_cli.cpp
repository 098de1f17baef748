#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ptssh/cli.hpp"
#include "ptssh/csv.hpp"
#include "ptssh/dynamics.hpp"
#include "ptssh/spectral.hpp"

using namespace ptssh;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ptssh_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("charge: trace schema and full-precision round trip") {
  const std::string dir = fresh_dir("charge");
  const int rc = cli::run({"charge", "--n", "6", "--j1", "0.5", "--j2", "1", "--gamma", "0.45",
                           "--tmax", "5", "--dt", "0.01", "--out", dir});
  CHECK(rc == 0);

  const csv::Table table = csv::read(dir + "/trace.csv");
  REQUIRE(table.header.size() == 14);
  CHECK(table.header[0] == "t");
  CHECK(table.header[1] == "delta_e");
  CHECK(table.header[2] == "p_1");
  CHECK(table.header[13] == "p_12");
  REQUIRE(table.rows.size() == 501);

  const ChargingTrace trace =
      evolve(LatticeParams{6, 0.5, 1.0, 0.45, Boundary::Open}, 5.0, 0.01);
  for (std::size_t i = 0; i < table.rows.size(); i += 50) {
    CHECK(csv::parse_double(table.rows[i][0]) == trace.times[i]);
    CHECK(csv::parse_double(table.rows[i][1]) == trace.delta_e[i]);
    CHECK(csv::parse_double(table.rows[i][7]) ==
          trace.populations(static_cast<Eigen::Index>(i), 5));
  }
}

TEST_CASE("identical configurations produce byte-identical outputs") {
  const std::string dir_a = fresh_dir("det_a");
  const std::string dir_b = fresh_dir("det_b");
  const std::vector<std::string> base{"charge", "--n", "6",    "--j1",   "0.5", "--gamma",
                                      "1.0",    "--tmax", "3", "--dt", "0.01"};
  for (const auto& dir : {dir_a, dir_b}) {
    auto args = base;
    args.push_back("--out");
    args.push_back(dir);
    CHECK(cli::run(args) == 0);
  }
  CHECK(slurp(dir_a + "/trace.csv") == slurp(dir_b + "/trace.csv"));
  CHECK(slurp(dir_a + "/trace.svg") == slurp(dir_b + "/trace.svg"));
  CHECK_FALSE(slurp(dir_a + "/trace.csv").empty());
}

TEST_CASE("spectrum: schema matches the sweep") {
  const std::string dir = fresh_dir("spectrum");
  CHECK(cli::run({"spectrum", "--n", "4", "--j1", "0.5", "--gamma-min", "0", "--gamma-max", "2",
                  "--steps", "5", "--out", dir}) == 0);
  const csv::Table table = csv::read(dir + "/spectrum.csv");
  REQUIRE(table.header.size() == 17);
  CHECK(table.header[0] == "gamma");
  CHECK(table.header[1] == "re_e_1");
  CHECK(table.header[16] == "im_e_8");
  REQUIRE(table.rows.size() == 5);
  CHECK(csv::parse_double(table.rows[4][0]) == 2.0);

  const SpectralSweep sweep =
      sweep_spectrum(LatticeParams{4, 0.5, 1.0, 0.0, Boundary::Open}, {0.0, 0.5, 1.0, 1.5, 2.0});
  for (int j = 0; j < 8; ++j)
    CHECK(csv::parse_double(table.rows[2][1 + j]) == sweep.eigenvalues[2](j).real());
}

TEST_CASE("phase-diagram: labels and boundary files") {
  const std::string dir = fresh_dir("phase");
  CHECK(cli::run({"phase-diagram", "--n", "6", "--steps", "9", "--out", dir}) == 0);

  const csv::Table labels = csv::read(dir + "/labels.csv");
  CHECK(labels.header == std::vector<std::string>{"j1", "gamma", "topology", "pt_regime"});
  CHECK(labels.rows.size() == 81);
  for (const auto& row : labels.rows) {
    CHECK((row[2] == "Topological" || row[2] == "Trivial" || row[2] == "Critical"));
    CHECK((row[3] == "Unbroken" || row[3] == "Edge-broken" || row[3] == "Partially broken" ||
           row[3] == "Fully broken"));
  }

  const csv::Table boundaries = csv::read(dir + "/boundaries.csv");
  CHECK(boundaries.header ==
        std::vector<std::string>{"j1", "gamma_e", "bulk_lower", "bulk_upper"});
  CHECK(boundaries.rows.size() == 9);
  CHECK(boundaries.rows.back()[1] == "nan");  // trivial side has no edge threshold
  CHECK(fs::exists(dir + "/phase_diagram.svg"));
}

TEST_CASE("verify: JSON report with one entry per check") {
  const std::string dir = fresh_dir("verify");
  CHECK(cli::run({"verify", "--n", "6", "--j1", "0.5", "--gamma", "0.45", "--out", dir}) == 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(dir + "/verify.json"));
  CHECK(doc["all_pass"] == true);
  CHECK(doc["checks"].size() >= 10);
  for (const auto& check : doc["checks"]) {
    CHECK(check.contains("name"));
    CHECK(check.contains("bound"));
    CHECK(check.contains("observed"));
    CHECK(check.contains("pass"));
  }
}

TEST_CASE("scaling: schema and infinite sentinel") {
  const std::string dir = fresh_dir("scaling");
  CHECK(cli::run({"scaling", "--n-list", "4,6", "--gamma-list", "0.45", "--out", dir}) == 0);
  const csv::Table table = csv::read(dir + "/scaling.csv");
  CHECK(table.header ==
        std::vector<std::string>{"n", "gamma", "phase", "first_peak", "log10_t95"});
  REQUIRE(table.rows.size() == 4);
  bool saw_inf = false, saw_finite = false;
  for (const auto& row : table.rows) {
    if (row[2] == "trivial" && row[4] == "inf") saw_inf = true;
    if (row[2] == "topological" && std::isfinite(csv::parse_double(row[4]))) saw_finite = true;
  }
  CHECK(saw_inf);
  CHECK(saw_finite);
}

TEST_CASE("metrics-sweep: tiny grid") {
  const std::string dir = fresh_dir("sweep");
  CHECK(cli::run({"metrics-sweep", "--n", "4", "--j1-min", "0.5", "--j1-max", "1.5",
                  "--j1-steps", "2", "--gamma-min", "2.6", "--gamma-max", "3.0",
                  "--gamma-steps", "2", "--out", dir}) == 0);
  const csv::Table table = csv::read(dir + "/metrics.csv");
  CHECK(table.header == std::vector<std::string>{"j1", "gamma", "first_peak", "log10_t95"});
  CHECK(table.rows.size() == 4);
  for (const auto& row : table.rows)
    CHECK(csv::parse_double(row[2]) == 1.0);  // fully broken band: unity convention
  CHECK(fs::exists(dir + "/first_peak.svg"));
  CHECK(fs::exists(dir + "/t95.svg"));
}

TEST_CASE("formats option narrows the emitted files") {
  const std::string dir = fresh_dir("formats");
  CHECK(cli::run({"charge", "--n", "4", "--j1", "0.5", "--gamma", "0.45", "--tmax", "1",
                  "--formats", "csv", "--out", dir}) == 0);
  CHECK(fs::exists(dir + "/trace.csv"));
  CHECK_FALSE(fs::exists(dir + "/trace.svg"));
}

TEST_CASE("populations: trace plus population panel") {
  const std::string dir = fresh_dir("pops");
  CHECK(cli::run({"populations", "--n", "4", "--j1", "0.5", "--gamma", "2.8", "--tmax", "3",
                  "--out", dir}) == 0);
  const csv::Table table = csv::read(dir + "/trace.csv");
  CHECK(table.header.size() == 10);  // t, delta_e, p_1..p_8
  CHECK(fs::exists(dir + "/populations.svg"));
}

TEST_CASE("fig2 preset emits spectra and the phase diagram") {
  const std::string dir = fresh_dir("fig2");
  CHECK(cli::run({"fig2", "--steps", "11", "--out", dir}) == 0);
  for (const char* name :
       {"fig2_spectrum_topological.csv", "fig2_spectrum_trivial.csv", "fig2_labels.csv",
        "fig2_boundaries.csv", "fig2_phase_diagram.svg", "fig2_spectrum_topological.svg"})
    CHECK(fs::exists(dir + "/" + std::string(name)));
  CHECK(csv::read(dir + "/fig2_labels.csv").rows.size() == 201 * 301);
}

TEST_CASE("usage and domain error exit codes") {
  CHECK(cli::run({"no-such-command"}) == 2);
  CHECK(cli::run({"charge", "--bogus-flag", "1"}) == 2);
  CHECK(cli::run({}) == 2);
  const std::string dir = fresh_dir("domain");
  CHECK(cli::run({"charge", "--n", "1", "--out", dir}) == 1);  // invalid lattice
  CHECK(cli::run({"--help"}) == 0);
}

}  // TEST_SUITE
