#pragma once

#include <cstddef>
#include <vector>

#include "cobed/basis.hpp"
#include "cobed/hamiltonian.hpp"
#include "cobed/lattice.hpp"
#include "cobed/state.hpp"

namespace cobed {

/// Schmidt coefficients of a single pair, in non-increasing order and summing to one.
class SchmidtSpectrum {
 public:
  /// Throws std::invalid_argument if the coefficients are negative, unsorted,
  /// or do not sum to one within 1e-12.
  explicit SchmidtSpectrum(std::vector<double> coefficients);

  static SchmidtSpectrum uniform(std::size_t rank);

  const std::vector<double>& coefficients() const noexcept { return lambda_; }
  std::size_t rank() const noexcept { return lambda_.size(); }
  double purity() const noexcept;

 private:
  std::vector<double> lambda_;
};

/// The single-pair ground state is the zero-momentum pair wave, so every
/// site carries Schmidt weight 1/M.
SchmidtSpectrum schmidt_of_single_pair_ground(const LatticeGeometry& geom);

/// Elementary symmetric polynomials e_0 .. e_order of the coefficients.
std::vector<double> elementary_symmetric(const std::vector<double>& lambda, std::size_t order);

/// Compositeness normalization chi_N = N! e_N(lambda). chi_0 = 1; zero for N > rank.
double chi(const SchmidtSpectrum& spectrum, std::size_t pairs);

/// chi_N / chi_{N-1}; one means perfectly bosonic behaviour.
double chi_ratio(const SchmidtSpectrum& spectrum, std::size_t pairs);

/// (c0^dagger)^N |0> normalized: every hard-core configuration with amplitude C(M, N)^{-1/2}.
StateVector ansatz_state(const FullBasis& basis);

/// The ansatz expressed in the zero-momentum sector: sqrt(|orbit| / C(M, N)) per orbit.
StateVector ansatz_state(const SectorBasis& basis);

/// <N| H_eff |N> for N = params.pairs, evaluated as a sparse quadratic form
/// in the zero-momentum sector.
double ansatz_energy(const LatticeGeometry& geom, const ModelParameters& params);

}  // namespace cobed
