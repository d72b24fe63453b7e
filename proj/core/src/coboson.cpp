#include "cobed/coboson.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace cobed {

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> coefficients)
    : lambda_(std::move(coefficients)) {
  if (lambda_.empty()) throw std::invalid_argument("Schmidt spectrum is empty");
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (!(lambda_[i] >= 0.0)) throw std::invalid_argument("negative Schmidt coefficient");
    if (i > 0 && lambda_[i] > lambda_[i - 1]) {
      throw std::invalid_argument("Schmidt coefficients must be non-increasing");
    }
  }
  const double sum = std::accumulate(lambda_.begin(), lambda_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("Schmidt coefficients must sum to one");
  }
}

SchmidtSpectrum SchmidtSpectrum::uniform(std::size_t rank) {
  if (rank == 0) throw std::invalid_argument("Schmidt rank must be positive");
  return SchmidtSpectrum(std::vector<double>(rank, 1.0 / static_cast<double>(rank)));
}

double SchmidtSpectrum::purity() const noexcept {
  double p = 0.0;
  for (const auto l : lambda_) p += l * l;
  return p;
}

SchmidtSpectrum schmidt_of_single_pair_ground(const LatticeGeometry& geom) {
  return SchmidtSpectrum::uniform(geom.site_count());
}

std::vector<double> elementary_symmetric(const std::vector<double>& lambda, std::size_t order) {
  // Adding one variable at a time: e_k <- e_k + lambda * e_{k-1}. All terms
  // are non-negative for a Schmidt spectrum, so there is no cancellation.
  std::vector<double> e(order + 1, 0.0);
  e[0] = 1.0;
  std::size_t seen = 0;
  for (const auto l : lambda) {
    ++seen;
    for (std::size_t k = std::min(seen, order); k >= 1; --k) e[k] += l * e[k - 1];
  }
  return e;
}

double chi(const SchmidtSpectrum& spectrum, std::size_t pairs) {
  if (pairs > spectrum.rank()) return 0.0;
  const auto e = elementary_symmetric(spectrum.coefficients(), pairs);
  double factorial = 1.0;
  for (std::size_t k = 2; k <= pairs; ++k) factorial *= static_cast<double>(k);
  return factorial * e[pairs];
}

double chi_ratio(const SchmidtSpectrum& spectrum, std::size_t pairs) {
  if (pairs == 0) throw std::invalid_argument("chi ratio needs at least one pair");
  if (pairs > spectrum.rank()) return 0.0;
  // Computed from one pass so both factors share their rounding.
  const auto e = elementary_symmetric(spectrum.coefficients(), pairs);
  return static_cast<double>(pairs) * e[pairs] / e[pairs - 1];
}

StateVector ansatz_state(const FullBasis& basis) {
  const double amp = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  return {basis.key(), std::vector<double>(basis.size(), amp)};
}

StateVector ansatz_state(const SectorBasis& basis) {
  if (!basis.momentum().is_zero()) {
    throw std::invalid_argument("the coboson ansatz lives in the zero-momentum sector");
  }
  const double total = static_cast<double>(basis.full().size());
  StateVector v{basis.key(), std::vector<double>(basis.size())};
  for (std::size_t s = 0; s < basis.size(); ++s) {
    v.amplitudes[s] = std::sqrt(static_cast<double>(basis.orbit_size(s)) / total);
  }
  return v;
}

double ansatz_energy(const LatticeGeometry& geom, const ModelParameters& params) {
  if (params.pairs > geom.site_count()) {
    throw std::invalid_argument("more pairs than sites");
  }
  const auto basis = build_sector_basis(geom, params.pairs);
  const auto h = build_effective(geom, params, basis);
  const auto v = ansatz_state(basis);
  return h.expectation(v.amplitudes, v.amplitudes);
}

}  // namespace cobed
