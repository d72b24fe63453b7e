#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cobed/basis.hpp"
#include "cobed/lattice.hpp"
#include "cobed/sparse_matrix.hpp"

namespace cobed {

/// Microscopic couplings. Bound pairs hop and repel with the second-order
/// effective tunnelings V_x = J_x^2 / U0 and V_y = J_y^2 / U0.
struct ModelParameters {
  double u0 = 100.0;
  double jx = 1.0;
  double jy = 1.0;
  std::size_t pairs = 2;

  double vx() const noexcept { return jx * jx / u0; }
  double vy() const noexcept { return jy * jy / u0; }
  /// max(|J_x|, |J_y|) / U0; small values mean the pair picture is accurate.
  double perturbative_ratio() const noexcept;

  /// Throws std::invalid_argument unless U0 > 0 and all couplings are finite.
  void validate() const;

  /// N * (U0 + sum of V over directions with extent >= 2): minus the energy
  /// of N isolated pairs sitting still.
  double binding_constant(const LatticeGeometry& geom) const noexcept;
};

/// Effective Hamiltonian of the all-paired manifold on the full configuration basis:
///   -N (U0 + sum V) + sum_bonds V N_i N_j - (V / 2) sum_bonds (T+ + T-).
SparseHamiltonian<double> build_effective(const LatticeGeometry& geom,
                                          const ModelParameters& params,
                                          const FullBasis& basis);

/// Same operator restricted to the zero-momentum sector (real).
SparseHamiltonian<double> build_effective(const LatticeGeometry& geom,
                                          const ModelParameters& params,
                                          const SectorBasis& basis);

/// Same operator restricted to any momentum sector.
SparseHamiltonian<std::complex<double>> build_effective_complex(
    const LatticeGeometry& geom, const ModelParameters& params, const SectorBasis& basis);

inline constexpr std::size_t kDefaultFullModelLimit = 1'000'000;

/// Two-species fermion Hamiltonian
///   -U0 sum_j n^a_j n^b_j + (J_nu / 2) sum_bonds (a+_i a_j + b+_i b_j + h.c.)
/// on the product basis of N a-fermions and N b-fermions; the state index is
/// rank(a) * C(M, N) + rank(b). Each species is ordered by site index for the
/// fermionic signs; operators of different species commute.
SparseHamiltonian<double> build_full(const LatticeGeometry& geom,
                                     const ModelParameters& params,
                                     std::size_t size_limit = kDefaultFullModelLimit);

/// Spin configurations with `up` raised spins on a ring of `length` sites, as
/// bit masks in increasing numeric order.
std::vector<std::uint64_t> spin_sector_states(std::size_t length, std::size_t up);

/// -N U0 + (V / 4) (H_H - L) on the sector with 2N - L total sigma^z, where
/// H_H = sum_j sigma_j . sigma_{j+1}. Requires a ring of even length.
SparseHamiltonian<double> heisenberg_image(const LatticeGeometry& geom,
                                           const ModelParameters& params);

}  // namespace cobed
