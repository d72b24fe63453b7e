#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cobed/eigensolver.hpp"
#include "cobed/hamiltonian.hpp"

namespace cobed::tools {

/// Parses "a:b:step" (step optional, default 1) into the inclusive list a, a+step, ... <= b.
std::vector<std::size_t> parse_range(const std::string& spec);

/// Parses "50,100,200".
std::vector<double> parse_list(const std::string& spec);

/// One lattice size of a fidelity scan.
struct ScanPoint {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t sites = 0;
  std::size_t sector_dimension = 0;
  double fidelity = 0.0;
  double exact_energy = 0.0;
  double ansatz_energy = 0.0;
  /// (E + N (U0 + sum V)) / V_x
  double exact_relative = 0.0;
  double ansatz_relative = 0.0;
  /// Only for two pairs on a ring; NaN otherwise.
  double analytic_fidelity = 0.0;
  /// Largest fidelity over a degenerate ground space; NaN unless near-degenerate.
  double degenerate_max_fidelity = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool near_degenerate = false;
  std::string status;
};

struct ScanConfig {
  std::size_t rows = 1;
  std::vector<std::size_t> cols;
  /// Use L x L tori; `rows` is ignored.
  bool square = false;
  ModelParameters params;
  SolverOptions solver;
};

/// Ground state in the zero-momentum sector of the effective model and its
/// overlap with the coboson ansatz. Solver failures are recorded in `status`.
ScanPoint fidelity_point(std::size_t rows, std::size_t cols, const ModelParameters& params,
                         const SolverOptions& solver);

std::vector<ScanPoint> run_fidelity_scan(const ScanConfig& config);

struct CorrelationRow {
  std::size_t jx = 0;
  std::size_t jy = 0;
  double p_exact = 0.0;
  double p_ansatz = 0.0;
};

struct CorrelationConfig {
  std::size_t rows = 1;
  std::size_t cols = 20;
  std::size_t anchor_row = 0;
  std::size_t anchor_col = 0;
  ModelParameters params;
  SolverOptions solver;
};

struct CorrelationResult {
  std::vector<CorrelationRow> rows;
  std::size_t sector_dimension = 0;
  double exact_energy = 0.0;
  double residual = 0.0;
  bool near_degenerate = false;
};

CorrelationResult run_correlations(const CorrelationConfig& config);

struct ValidationConfig {
  std::size_t length = 5;
  std::size_t pairs = 1;
  std::vector<double> ratios{50.0, 100.0, 200.0};
  double j = 1.0;
  std::size_t size_limit = kDefaultFullModelLimit;
};

struct ValidationRow {
  double ratio = 0.0;
  double u0 = 0.0;
  double full_energy = 0.0;
  double effective_energy = 0.0;
  double difference = 0.0;
  /// J^4 / U0^3, the expected scale of the difference.
  double fourth_order_scale = 0.0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  /// Least-squares slope of log|E_full - E_eff| against log(J / U0).
  double slope = 0.0;
  bool heisenberg_checked = false;
  double heisenberg_max_difference = 0.0;
  /// |E(J) - E(-J)| of the full model at the first ratio.
  double sign_flip_difference = 0.0;
};

ValidationReport run_validation(const ValidationConfig& config);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// %.15g, or an empty field for NaN.
std::string format_number(double value);

/// Metadata lines are written with a leading "# ".
void write_scan_csv(std::ostream& os, const std::vector<std::string>& metadata,
                    const std::vector<ScanPoint>& points);
void write_correlation_csv(std::ostream& os, const std::vector<std::string>& metadata,
                           const CorrelationResult& result);
void write_validation_csv(std::ostream& os, const std::vector<std::string>& metadata,
                          const ValidationReport& report);

/// Self-describing summary of one CLI invocation.
struct ExperimentRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  nlohmann::json results;
  std::string timestamp;
  std::string version;

  /// Stable FNV-1a digest of command and parameters.
  std::string id() const;
  std::string to_json() const;
};

nlohmann::json scan_results_json(const std::vector<ScanPoint>& points);
nlohmann::json correlation_results_json(const CorrelationResult& result);
nlohmann::json validation_results_json(const ValidationReport& report);

const char* version() noexcept;

}  // namespace cobed::tools
