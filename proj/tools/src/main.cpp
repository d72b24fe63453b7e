// cobed: coboson-ansatz fidelity scans, correlation maps and model validation.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cobed/lattice.hpp"
#include "cobed_tools/experiments.hpp"

namespace {

using cobed::tools::format_number;

struct CommonOptions {
  double u0 = 100.0;
  double jx = 1.0;
  double jy = 1.0;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string json;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--u0", o.u0, "on-site attraction U0 (> 0)")->capture_default_str();
  cmd->add_option("--jx", o.jx, "fermion tunneling along x")->capture_default_str();
  cmd->add_option("--jy", o.jy, "fermion tunneling along y")->capture_default_str();
  cmd->add_option("--tol", o.tol, "relative eigen-residual tolerance")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Lanczos start-vector seed")->capture_default_str();
  cmd->add_option("--out", o.out, "output CSV path, '-' for stdout")->capture_default_str();
  cmd->add_option("--json", o.json, "also write a JSON run record to this path");
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void warn_doubled_bonds(std::size_t rows, std::size_t cols) {
  if (cobed::LatticeGeometry(rows, cols).has_doubled_bonds()) {
    std::cerr << "warning: " << rows << "x" << cols
              << " has an extent of 2; its bonds are summed twice (doubled coupling)\n";
  }
}

template <class Writer>
void emit_csv(const std::string& path, Writer&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing " + path);
}

void emit_json(const std::string& path, const cobed::tools::ExperimentRecord& record) {
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << record.to_json() << '\n';
}

std::vector<std::string> metadata(const std::string& command,
                                  const std::vector<std::pair<std::string, std::string>>& params) {
  std::vector<std::string> lines{std::string("cobed ") + cobed::tools::version(),
                                 "command: " + command};
  std::ostringstream os;
  for (std::size_t i = 0; i < params.size(); ++i) {
    os << (i ? " " : "") << params[i].first << "=" << params[i].second;
  }
  lines.push_back("parameters: " + os.str());
  return lines;
}

cobed::SolverOptions solver_options(const CommonOptions& o) {
  cobed::SolverOptions s;
  s.tolerance = o.tol;
  s.seed = o.seed;
  return s;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"status", "error"}, {"kind", kind}, {"message", message}}.dump()
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coboson ansatz versus exact ground states of bound pairs on periodic lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cobed::tools::version()));

  // fidelity-scan
  CommonOptions scan_opts;
  std::size_t scan_rows = 1;
  std::size_t scan_cols = 0;
  std::string scan_range;
  std::size_t scan_pairs = 2;
  bool scan_square = false;
  auto* scan = app.add_subcommand("fidelity-scan",
                                  "fidelity of the coboson ansatz over a range of lattice sizes");
  scan->add_option("--rows", scan_rows, "torus rows n (1 for a ring)")->capture_default_str();
  auto* cols_opt = scan->add_option("--cols", scan_cols, "single number of columns L");
  scan->add_option("--cols-range", scan_range, "columns as a:b[:step]")->excludes(cols_opt);
  scan->add_flag("--square", scan_square, "scan L x L tori (rows follow cols)");
  scan->add_option("--n-pairs", scan_pairs, "number of pairs N (>= 2)")->capture_default_str();
  add_common(scan, scan_opts);

  // correlations
  CommonOptions corr_opts;
  cobed::tools::CorrelationConfig corr;
  auto* correlations = app.add_subcommand(
      "correlations", "two-pair conditional position probabilities, exact and ansatz");
  correlations->add_option("--rows", corr.rows, "torus rows n")->capture_default_str();
  correlations->add_option("--cols", corr.cols, "torus columns L")->capture_default_str();
  correlations->add_option("--anchor-row", corr.anchor_row, "row of the fixed pair")
      ->capture_default_str();
  correlations->add_option("--anchor-col", corr.anchor_col, "column of the fixed pair")
      ->capture_default_str();
  add_common(correlations, corr_opts);

  // validate
  CommonOptions val_opts;
  std::size_t val_length = 5;
  std::size_t val_pairs = 1;
  std::string val_ratios = "50,100,200";
  auto* validate = app.add_subcommand(
      "validate", "compare the full fermion model with the effective pair model on a ring");
  validate->add_option("--cols", val_length, "ring length L")->capture_default_str();
  validate->add_option("--n-pairs", val_pairs, "number of pairs N")->capture_default_str();
  validate->add_option("--ratios", val_ratios, "comma-separated U0/J values")
      ->capture_default_str();
  validate->add_option("--jx", val_opts.jx, "fermion tunneling J")->capture_default_str();
  validate->add_option("--out", val_opts.out, "output CSV path, '-' for stdout")
      ->capture_default_str();
  validate->add_option("--json", val_opts.json, "also write a JSON run record to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    cobed::tools::ExperimentRecord record;
    record.timestamp = timestamp();
    record.version = cobed::tools::version();

    if (*scan) {
      cobed::tools::ScanConfig config;
      config.rows = scan_rows;
      config.square = scan_square;
      if (!scan_range.empty()) {
        config.cols = cobed::tools::parse_range(scan_range);
      } else if (scan_cols > 0) {
        config.cols = {scan_cols};
      } else {
        throw std::invalid_argument("give --cols or --cols-range");
      }
      config.params = {scan_opts.u0, scan_opts.jx, scan_opts.jy, scan_pairs};
      config.solver = solver_options(scan_opts);
      for (const auto l : config.cols) warn_doubled_bonds(scan_square ? l : scan_rows, l);

      record.command = "fidelity-scan";
      record.parameters = {{"rows", scan_square ? "square" : std::to_string(scan_rows)},
                           {"cols", scan_range.empty() ? std::to_string(scan_cols) : scan_range},
                           {"n_pairs", std::to_string(scan_pairs)},
                           {"u0", format_number(scan_opts.u0)},
                           {"jx", format_number(scan_opts.jx)},
                           {"jy", format_number(scan_opts.jy)},
                           {"tol", format_number(scan_opts.tol)},
                           {"seed", std::to_string(scan_opts.seed)}};
      const auto points = cobed::tools::run_fidelity_scan(config);
      for (const auto& p : points) {
        if (p.status != "ok") {
          std::cerr << "warning: " << p.rows << "x" << p.cols << ": " << p.status << '\n';
        }
      }
      const auto meta = metadata(record.command, record.parameters);
      emit_csv(scan_opts.out, [&](std::ostream& os) {
        cobed::tools::write_scan_csv(os, meta, points);
      });
      record.results = cobed::tools::scan_results_json(points);
      emit_json(scan_opts.json, record);
    } else if (*correlations) {
      corr.params = {corr_opts.u0, corr_opts.jx, corr_opts.jy, 2};
      corr.solver = solver_options(corr_opts);
      warn_doubled_bonds(corr.rows, corr.cols);
      record.command = "correlations";
      record.parameters = {{"rows", std::to_string(corr.rows)},
                           {"cols", std::to_string(corr.cols)},
                           {"anchor_row", std::to_string(corr.anchor_row)},
                           {"anchor_col", std::to_string(corr.anchor_col)},
                           {"u0", format_number(corr_opts.u0)},
                           {"jx", format_number(corr_opts.jx)},
                           {"jy", format_number(corr_opts.jy)},
                           {"tol", format_number(corr_opts.tol)},
                           {"seed", std::to_string(corr_opts.seed)}};
      const auto result = cobed::tools::run_correlations(corr);
      if (result.near_degenerate) {
        std::cerr << "warning: ground state is near-degenerate; the map depends on the solver\n";
      }
      const auto meta = metadata(record.command, record.parameters);
      emit_csv(corr_opts.out, [&](std::ostream& os) {
        cobed::tools::write_correlation_csv(os, meta, result);
      });
      record.results = cobed::tools::correlation_results_json(result);
      emit_json(corr_opts.json, record);
    } else if (*validate) {
      cobed::tools::ValidationConfig config;
      config.length = val_length;
      config.pairs = val_pairs;
      config.ratios = cobed::tools::parse_list(val_ratios);
      config.j = val_opts.jx;
      record.command = "validate";
      record.parameters = {{"cols", std::to_string(val_length)},
                           {"n_pairs", std::to_string(val_pairs)},
                           {"ratios", val_ratios},
                           {"jx", format_number(val_opts.jx)}};
      const auto report = cobed::tools::run_validation(config);
      const auto meta = metadata(record.command, record.parameters);
      emit_csv(val_opts.out, [&](std::ostream& os) {
        cobed::tools::write_validation_csv(os, meta, report);
      });
      record.results = cobed::tools::validation_results_json(report);
      emit_json(val_opts.json, record);
    }
  } catch (const std::invalid_argument& e) {
    print_error("invalid_argument", e.what());
    return 1;
  } catch (const std::length_error& e) {
    print_error("size_limit", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 1;
  }
  return 0;
}
