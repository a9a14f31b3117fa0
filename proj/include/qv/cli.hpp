#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

// Command front end shared by the binary and the test suites. Every command
// produces the report object { command, params, results, residuals, pass }
// and an exit status: 0 when all residuals pass, 1 with the offending
// residuals named, 2 (from the binary) on usage errors. Output is byte-stable
// for fixed flags and seed.

namespace qv::cli {

struct RunConfig {
  std::string command;  // nc-value | dh-value | star-check | locality-check |
                        // two-qubit | epr-grid | fixtures
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  std::string output = "json";  // json | table

  // two-qubit scenario (angles in radians)
  double r = 0.6;
  double zeta = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double psi_a = 0.0;
  double psi_b = 0.0;

  // grid scenario
  int n = 128;
  double box = 64.0;
  double p = 0.9817477042468103;  // snapped to the commensurate lattice on use
  double ro = 8.0;
  double width = 2.0;

  // randomized checks: matrix dims for star-check, the factor list of one
  // composite system for locality-check
  std::vector<int> dims = {2, 2};
  int trials = 100;

  // fixtures
  bool regen = false;
  std::string fixtures_dir = "fixtures";
};

struct RunResult {
  int exit_code = 0;
  nlohmann::json report;
  std::string rendered;                // JSON text or table, per cfg.output
  std::vector<std::string> failures;   // names of residuals out of tolerance
};

RunResult run_command(const RunConfig& cfg);

/// The 16 golden grid points (r, zeta) in {0, 0.3, 0.6, 1} x quarter turns.
std::vector<std::pair<double, double>> fixture_grid();
std::string fixture_file_name(double r, int zeta_quarter_turns);
nlohmann::json two_qubit_fixture(double r, double zeta);

std::string format_complex(double re, double im);  // a+bi, 6 significant digits

}  // namespace qv::cli
