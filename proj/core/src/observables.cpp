#include "cobed/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cobed {

namespace {

constexpr double kNormSlack = 1e-8;

template <class Scalar>
void require_normalized(const BasicStateVector<Scalar>& v) {
  if (std::abs(v.norm() - 1.0) > kNormSlack) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

template <class Scalar>
Scalar overlap(const BasicStateVector<Scalar>& u, const BasicStateVector<Scalar>& v) {
  if (u.basis != v.basis) throw BasisMismatch(u.basis, v.basis);
  if (u.size() != v.size()) throw std::invalid_argument("vector lengths differ");
  Scalar acc{};
  for (std::size_t i = 0; i < u.size(); ++i) acc += conjugate(u.amplitudes[i]) * v.amplitudes[i];
  return acc;
}

CorrelationMap normalized_map(const LatticeGeometry& geom, Site anchor,
                              std::vector<double> weights) {
  double total = 0.0;
  for (const auto w : weights) total += w;
  if (total <= 0.0) {
    throw std::invalid_argument("state has no weight on configurations containing the anchor");
  }
  for (auto& w : weights) w /= total;
  return {geom, anchor, std::move(weights)};
}

void require_two_pairs(std::size_t pairs, std::size_t sites, Site anchor) {
  if (pairs != 2) throw std::invalid_argument("conditional maps are defined for two pairs");
  if (anchor >= sites) throw std::out_of_range("anchor site out of range");
}

}  // namespace

template <class Scalar>
double fidelity(const BasicStateVector<Scalar>& u, const BasicStateVector<Scalar>& v) {
  require_normalized(u);
  require_normalized(v);
  return std::min(1.0, std::norm(overlap(u, v)));
}

template <class Scalar>
double max_fidelity_in_subspace(const BasicStateVector<Scalar>& u,
                                std::span<const BasicStateVector<Scalar>> subspace) {
  require_normalized(u);
  double total = 0.0;
  for (const auto& v : subspace) total += std::norm(overlap(u, v));
  return std::min(1.0, total);
}

template <class Scalar>
double energy_expectation(const SparseHamiltonian<Scalar>& h, const BasicStateVector<Scalar>& v) {
  if (h.basis() != v.basis) throw BasisMismatch(h.basis(), v.basis);
  return std::real(h.expectation(v.amplitudes, v.amplitudes));
}

CorrelationMap conditional_map(const StateVector& state, const FullBasis& basis, Site anchor) {
  if (state.basis != basis.key()) throw BasisMismatch(basis.key(), state.basis);
  const auto& geom = basis.geometry();
  require_two_pairs(basis.pairs(), geom.site_count(), anchor);
  std::vector<double> weights(geom.site_count(), 0.0);
  std::array<Site, 2> config{};
  for (Site s = 0; s < geom.site_count(); ++s) {
    if (s == anchor) continue;
    config = {std::min(s, anchor), std::max(s, anchor)};
    const double a = state.amplitudes[basis.rank(config)];
    weights[s] = a * a;
  }
  return normalized_map(geom, anchor, std::move(weights));
}

template <class Scalar>
CorrelationMap conditional_map(const BasicStateVector<Scalar>& state, const SectorBasis& basis,
                               Site anchor) {
  if (state.basis != basis.key()) throw BasisMismatch(basis.key(), state.basis);
  const auto& geom = basis.geometry();
  require_two_pairs(basis.pairs(), geom.site_count(), anchor);
  const auto& orbits = basis.orbits();
  std::vector<double> weights(geom.site_count(), 0.0);
  std::array<Site, 2> config{};
  for (Site s = 0; s < geom.site_count(); ++s) {
    if (s == anchor) continue;
    config = {std::min(s, anchor), std::max(s, anchor)};
    const auto sector_state = basis.state_of_orbit(orbits.orbit_of(basis.full().rank(config)));
    if (sector_state < 0) continue;
    const auto i = static_cast<std::size_t>(sector_state);
    // the translation phase drops out of |amplitude|^2
    weights[s] = std::norm(state.amplitudes[i]) / static_cast<double>(basis.orbit_size(i));
  }
  return normalized_map(geom, anchor, std::move(weights));
}

double flatness_variance(const CorrelationMap& map, std::size_t radius) {
  const auto& geom = map.geometry;
  const auto [ar, ac] = geom.position(map.anchor);
  const auto torus_gap = [](std::size_t a, std::size_t b, std::size_t extent) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, extent - d);
  };
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (Site s = 0; s < geom.site_count(); ++s) {
    const auto [r, c] = geom.position(s);
    const std::size_t d =
        std::max(torus_gap(r, ar, geom.rows()), torus_gap(c, ac, geom.cols()));
    if (d <= radius) continue;
    sum += map.probability[s];
    sum_sq += map.probability[s] * map.probability[s];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("no sites outside the exclusion radius");
  const double mean = sum / static_cast<double>(count);
  return std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean);
}

double purity_of_pair_constituent(const StateVector& state) {
  if (state.basis.kind != BasisKind::pair_configurations || state.basis.pairs != 1) {
    throw std::invalid_argument("purity is defined here for single-pair states");
  }
  require_normalized(state);
  double p = 0.0;
  for (const auto a : state.amplitudes) p += a * a * a * a;
  return p;
}

template double fidelity(const StateVector&, const StateVector&);
template double fidelity(const ComplexStateVector&, const ComplexStateVector&);
template double max_fidelity_in_subspace(const StateVector&, std::span<const StateVector>);
template double max_fidelity_in_subspace(const ComplexStateVector&,
                                         std::span<const ComplexStateVector>);
template double energy_expectation(const SparseHamiltonian<double>&, const StateVector&);
template double energy_expectation(const SparseHamiltonian<std::complex<double>>&,
                                   const ComplexStateVector&);
template CorrelationMap conditional_map(const StateVector&, const SectorBasis&, Site);
template CorrelationMap conditional_map(const ComplexStateVector&, const SectorBasis&, Site);

}  // namespace cobed
