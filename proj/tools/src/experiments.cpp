#include "cobed_tools/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cobed/analytic.hpp"
#include "cobed/basis.hpp"
#include "cobed/coboson.hpp"
#include "cobed/observables.hpp"

#ifndef COBED_VERSION
#define COBED_VERSION "unknown"
#endif

namespace cobed::tools {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t parse_size(const std::string& text) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("not an integer: " + text);
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

void write_metadata(std::ostream& os, const std::vector<std::string>& metadata) {
  for (const auto& line : metadata) os << "# " << line << '\n';
}

double relative_energy(double energy, const LatticeGeometry& geom, const ModelParameters& p) {
  const double vx = p.vx();
  if (vx == 0.0) return kNaN;
  return (energy + p.binding_constant(geom)) / vx;
}

}  // namespace

const char* version() noexcept { return COBED_VERSION; }

std::vector<std::size_t> parse_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty() || parts.size() > 3) throw std::invalid_argument("range must be a:b[:step]");
  const std::size_t first = parse_size(parts[0]);
  const std::size_t last = parts.size() > 1 ? parse_size(parts[1]) : first;
  const std::size_t step = parts.size() > 2 ? parse_size(parts[2]) : 1;
  if (step == 0) throw std::invalid_argument("range step must be positive");
  if (last < first) throw std::invalid_argument("range end precedes its start");
  std::vector<std::size_t> out;
  for (std::size_t v = first; v <= last; v += step) out.push_back(v);
  return out;
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  for (const auto& item : split(spec, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("not a number: " + item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// ------------------------------------------------------------ fidelity scan

ScanPoint fidelity_point(std::size_t rows, std::size_t cols, const ModelParameters& params,
                         const SolverOptions& solver) {
  const LatticeGeometry geom(rows, cols);
  ScanPoint point;
  point.rows = rows;
  point.cols = cols;
  point.sites = geom.site_count();
  point.analytic_fidelity = kNaN;
  point.degenerate_max_fidelity = kNaN;

  const SectorBasis sector = build_sector_basis(geom, params.pairs);
  point.sector_dimension = sector.size();
  const auto h = build_effective(geom, params, sector);
  const auto ansatz = ansatz_state(sector);
  point.ansatz_energy = energy_expectation(h, ansatz);
  point.ansatz_relative = relative_energy(point.ansatz_energy, geom, params);
  if (geom.is_ring() && params.pairs == 2 && cols >= 3) {
    point.analytic_fidelity = analytic_fidelity_1d(cols);
  }

  try {
    const auto gs = ground_state(h, solver);
    point.exact_energy = gs.eigenvalue;
    point.exact_relative = relative_energy(gs.eigenvalue, geom, params);
    point.fidelity = fidelity(ansatz, gs.eigenvector);
    point.residual = gs.residual;
    point.iterations = gs.iterations;
    point.converged = gs.converged;
    point.near_degenerate = gs.near_degenerate;
    point.status = "ok";
    if (gs.near_degenerate) {
      point.status = "near_degenerate";
      if (h.dimension() <= solver.dense_threshold) {
        const auto spectrum = dense_spectrum(h);
        std::size_t count = 0;
        while (count < spectrum.size() &&
               spectrum[count] - spectrum[0] <=
                   solver.degeneracy_tolerance * std::max(1.0, std::abs(spectrum[0]))) {
          ++count;
        }
        const auto states = dense_lowest_states(h, count);
        point.degenerate_max_fidelity =
            max_fidelity_in_subspace<double>(ansatz, std::span<const StateVector>(states));
      }
    }
  } catch (const ConvergenceError& e) {
    point.exact_energy = kNaN;
    point.exact_relative = kNaN;
    point.fidelity = kNaN;
    point.residual = e.residual();
    point.iterations = e.iterations();
    point.converged = false;
    point.status = "not_converged";
  }
  return point;
}

std::vector<ScanPoint> run_fidelity_scan(const ScanConfig& config) {
  config.params.validate();
  if (config.params.pairs < 2) throw std::invalid_argument("fidelity scans need N >= 2 pairs");
  std::vector<std::size_t> cols = config.cols;
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::vector<ScanPoint> points;
  for (const auto l : cols) {
    const std::size_t rows = config.square ? l : config.rows;
    if (rows * l < config.params.pairs) {
      throw std::invalid_argument("lattice " + std::to_string(rows) + "x" + std::to_string(l) +
                                  " has fewer sites than pairs");
    }
    points.push_back(fidelity_point(rows, l, config.params, config.solver));
  }
  return points;
}

// ------------------------------------------------------------- correlations

CorrelationResult run_correlations(const CorrelationConfig& config) {
  ModelParameters params = config.params;
  params.pairs = 2;
  params.validate();
  const LatticeGeometry geom(config.rows, config.cols);
  if (geom.site_count() < 3) throw std::invalid_argument("correlations need at least 3 sites");
  if (config.anchor_row >= geom.rows() || config.anchor_col >= geom.cols()) {
    throw std::invalid_argument("anchor lies outside the lattice");
  }
  const Site anchor = geom.site(static_cast<std::int64_t>(config.anchor_row),
                                static_cast<std::int64_t>(config.anchor_col));

  const SectorBasis sector = build_sector_basis(geom, 2);
  const auto h = build_effective(geom, params, sector);
  const auto gs = ground_state(h, config.solver);
  const auto exact = conditional_map(gs.eigenvector, sector, anchor);
  const auto ansatz = conditional_map(ansatz_state(sector), sector, anchor);

  CorrelationResult result;
  result.sector_dimension = sector.size();
  result.exact_energy = gs.eigenvalue;
  result.residual = gs.residual;
  result.near_degenerate = gs.near_degenerate;
  for (std::size_t r = 0; r < geom.rows(); ++r) {
    for (std::size_t c = 0; c < geom.cols(); ++c) {
      result.rows.push_back({c, r, exact.at(r, c), ansatz.at(r, c)});
    }
  }
  return result;
}

// --------------------------------------------------------------- validation

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ValidationReport run_validation(const ValidationConfig& config) {
  if (config.ratios.empty()) throw std::invalid_argument("no U0/J ratios given");
  const auto geom = LatticeGeometry::ring(config.length);
  ValidationReport report;
  SolverOptions solver;

  std::vector<double> log_ratio, log_diff;
  for (const double ratio : config.ratios) {
    if (!(ratio > 0.0)) throw std::invalid_argument("U0/J ratios must be positive");
    ModelParameters params{ratio * config.j, config.j, 0.0, config.pairs};
    const FullBasis basis(geom, config.pairs);
    ValidationRow row;
    row.ratio = ratio;
    row.u0 = params.u0;
    row.full_energy = ground_state(build_full(geom, params, config.size_limit), solver).eigenvalue;
    row.effective_energy = ground_state(build_effective(geom, params, basis), solver).eigenvalue;
    row.difference = row.full_energy - row.effective_energy;
    row.fourth_order_scale = std::pow(config.j, 4) / std::pow(params.u0, 3);
    report.rows.push_back(row);
    log_ratio.push_back(std::log(std::abs(config.j) / params.u0));
    log_diff.push_back(std::log(std::abs(row.difference)));
  }
  report.slope = config.ratios.size() >= 2 ? fit_slope(log_ratio, log_diff) : kNaN;

  {
    ModelParameters params{config.ratios.front() * config.j, config.j, 0.0, config.pairs};
    ModelParameters flipped = params;
    flipped.jx = -params.jx;
    const double e = ground_state(build_full(geom, params, config.size_limit), solver).eigenvalue;
    const double ef =
        ground_state(build_full(geom, flipped, config.size_limit), solver).eigenvalue;
    report.sign_flip_difference = std::abs(e - ef);
  }

  if (config.length % 2 == 0) {
    ModelParameters params{config.ratios.front() * config.j, config.j, 0.0, config.pairs};
    const auto eff = dense_spectrum(build_effective(geom, params, FullBasis(geom, config.pairs)));
    const auto heis = dense_spectrum(heisenberg_image(geom, params));
    if (eff.size() != heis.size()) throw std::logic_error("Heisenberg sector size mismatch");
    report.heisenberg_checked = true;
    for (std::size_t i = 0; i < eff.size(); ++i) {
      report.heisenberg_max_difference =
          std::max(report.heisenberg_max_difference, std::abs(eff[i] - heis[i]));
    }
  }
  return report;
}

// ------------------------------------------------------------------ output

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

void write_scan_csv(std::ostream& os, const std::vector<std::string>& metadata,
                    const std::vector<ScanPoint>& points) {
  write_metadata(os, metadata);
  os << "n,L,M,sector_dim,fidelity,exact_energy,ansatz_energy,analytic_fidelity,residual,"
        "exact_energy_rel,ansatz_energy_rel,iterations,converged,near_degenerate,"
        "degenerate_max_fidelity,status\n";
  for (const auto& p : points) {
    os << p.rows << ',' << p.cols << ',' << p.sites << ',' << p.sector_dimension << ','
       << format_number(p.fidelity) << ',' << format_number(p.exact_energy) << ','
       << format_number(p.ansatz_energy) << ',' << format_number(p.analytic_fidelity) << ','
       << format_number(p.residual) << ',' << format_number(p.exact_relative) << ','
       << format_number(p.ansatz_relative) << ',' << p.iterations << ','
       << (p.converged ? 1 : 0) << ',' << (p.near_degenerate ? 1 : 0) << ','
       << format_number(p.degenerate_max_fidelity) << ',' << p.status << '\n';
  }
}

void write_correlation_csv(std::ostream& os, const std::vector<std::string>& metadata,
                           const CorrelationResult& result) {
  write_metadata(os, metadata);
  os << "j_x,j_y,p_exact,p_ansatz\n";
  for (const auto& r : result.rows) {
    os << r.jx << ',' << r.jy << ',' << format_number(r.p_exact) << ','
       << format_number(r.p_ansatz) << '\n';
  }
}

void write_validation_csv(std::ostream& os, const std::vector<std::string>& metadata,
                          const ValidationReport& report) {
  write_metadata(os, metadata);
  os << "# slope=" << format_number(report.slope)
     << " sign_flip_difference=" << format_number(report.sign_flip_difference);
  if (report.heisenberg_checked) {
    os << " heisenberg_max_difference=" << format_number(report.heisenberg_max_difference);
  }
  os << '\n';
  os << "u0_over_j,u0,full_energy,effective_energy,difference,j4_over_u03\n";
  for (const auto& r : report.rows) {
    os << format_number(r.ratio) << ',' << format_number(r.u0) << ','
       << format_number(r.full_energy) << ',' << format_number(r.effective_energy) << ','
       << format_number(r.difference) << ',' << format_number(r.fourth_order_scale) << '\n';
  }
}

// ------------------------------------------------------------------- JSON

namespace {

nlohmann::json number_or_null(double v) {
  return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v);
}

}  // namespace

nlohmann::json scan_results_json(const std::vector<ScanPoint>& points) {
  auto out = nlohmann::json::array();
  for (const auto& p : points) {
    out.push_back({{"n", p.rows},
                   {"L", p.cols},
                   {"M", p.sites},
                   {"sector_dim", p.sector_dimension},
                   {"fidelity", number_or_null(p.fidelity)},
                   {"exact_energy", number_or_null(p.exact_energy)},
                   {"ansatz_energy", number_or_null(p.ansatz_energy)},
                   {"analytic_fidelity", number_or_null(p.analytic_fidelity)},
                   {"residual", number_or_null(p.residual)},
                   {"iterations", p.iterations},
                   {"converged", p.converged},
                   {"near_degenerate", p.near_degenerate},
                   {"status", p.status}});
  }
  return out;
}

nlohmann::json correlation_results_json(const CorrelationResult& result) {
  return {{"sector_dim", result.sector_dimension},
          {"exact_energy", result.exact_energy},
          {"residual", result.residual},
          {"near_degenerate", result.near_degenerate},
          {"sites", result.rows.size()}};
}

nlohmann::json validation_results_json(const ValidationReport& report) {
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"u0_over_j", r.ratio},
                    {"u0", r.u0},
                    {"full_energy", r.full_energy},
                    {"effective_energy", r.effective_energy},
                    {"difference", r.difference}});
  }
  nlohmann::json out{{"rows", rows},
                     {"slope", number_or_null(report.slope)},
                     {"sign_flip_difference", report.sign_flip_difference}};
  if (report.heisenberg_checked) {
    out["heisenberg_max_difference"] = report.heisenberg_max_difference;
  }
  return out;
}

std::string ExperimentRecord::id() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto mix = [&](const std::string& s) {
    for (const unsigned char ch : s) {
      hash ^= ch;
      hash *= 0x100000001b3ULL;
    }
    hash ^= 0xff;
    hash *= 0x100000001b3ULL;
  };
  mix(command);
  for (const auto& [k, v] : parameters) {
    mix(k);
    mix(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

std::string ExperimentRecord::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  nlohmann::json record{{"id", id()},
                        {"command", command},
                        {"parameters", params},
                        {"results", results},
                        {"timestamp", timestamp},
                        {"version", version}};
  return record.dump(2);
}

}  // namespace cobed::tools
