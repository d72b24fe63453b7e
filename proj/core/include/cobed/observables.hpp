#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cobed/basis.hpp"
#include "cobed/lattice.hpp"
#include "cobed/sparse_matrix.hpp"
#include "cobed/state.hpp"

namespace cobed {

/// |<u|v>|^2 for two normalized vectors in the same basis.
template <class Scalar>
double fidelity(const BasicStateVector<Scalar>& u, const BasicStateVector<Scalar>& v);

/// sum_i |<u|v_i>|^2: the largest fidelity of u with any unit vector in the
/// span of the orthonormal set v.
template <class Scalar>
double max_fidelity_in_subspace(const BasicStateVector<Scalar>& u,
                                std::span<const BasicStateVector<Scalar>> subspace);

/// <v|H|v> for a normalized v.
template <class Scalar>
double energy_expectation(const SparseHamiltonian<Scalar>& h, const BasicStateVector<Scalar>& v);

/// Probability of finding the second of two pairs on each site, given the
/// first sits on `anchor`.
struct CorrelationMap {
  LatticeGeometry geometry;
  Site anchor = 0;
  std::vector<double> probability;

  double at(std::size_t row, std::size_t col) const {
    return probability[geometry.site(static_cast<std::int64_t>(row),
                                     static_cast<std::int64_t>(col))];
  }
};

/// Two-pair conditional map from a state on the full configuration basis.
CorrelationMap conditional_map(const StateVector& state, const FullBasis& basis, Site anchor);

/// Same, reading amplitudes straight from a sector vector without lifting it.
template <class Scalar>
CorrelationMap conditional_map(const BasicStateVector<Scalar>& state, const SectorBasis& basis,
                               Site anchor);

/// Population variance of the map over sites farther than `radius` from the
/// anchor (torus Chebyshev distance).
double flatness_variance(const CorrelationMap& map, std::size_t radius);

/// Purity sum_j |psi_j|^4 of one constituent of a single pair psi = sum_j psi_j |j, j>.
double purity_of_pair_constituent(const StateVector& state);

}  // namespace cobed
