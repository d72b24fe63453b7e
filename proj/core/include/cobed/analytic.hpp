#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cobed/basis.hpp"
#include "cobed/hamiltonian.hpp"
#include "cobed/lattice.hpp"

namespace cobed {

/// E_k = -U0 - 2 V cos^2(k pi / L), k = 0 .. L-1, for one pair on a ring.
std::vector<std::pair<std::size_t, double>> single_pair_spectrum(const LatticeGeometry& geom,
                                                                 const ModelParameters& params);

/// Exact two-pair ground state of the effective ring Hamiltonian,
///   psi(j1, j2) = A sin[pi (d - 1/2) / (L - 1)],
/// with d the ring distance between the two pairs.
class TwoPairExactState {
 public:
  explicit TwoPairExactState(std::size_t length);

  std::size_t length() const noexcept { return length_; }
  double normalization() const noexcept { return norm_; }

  static std::size_t ring_distance(Site a, Site b, std::size_t length) noexcept;

  /// Amplitude of a pair separation d; symmetric under d -> L - d.
  double amplitude_at_distance(std::size_t d) const;
  double amplitude(Site a, Site b) const { return amplitude_at_distance(ring_distance(a, b, length_)); }

  /// The state on a 1 x L, N = 2 configuration basis.
  StateVector on(const FullBasis& basis) const;

 private:
  std::size_t length_;
  double norm_;
};

/// -2 U0 - 4 V cos^2(pi / (2 (L - 1))).
double two_pair_exact_energy(std::size_t length, const ModelParameters& params);

/// Closed-form coboson ansatz energy for two pairs on a ring:
/// -2 U0 - 4 V + 4 V / (L - 1).
double two_pair_ansatz_energy(std::size_t length, const ModelParameters& params);

/// |<ansatz|exact>|^2 for two pairs on a ring of `length` sites.
double analytic_fidelity_1d(std::size_t length);

/// Dilute-limit fidelity 8 / pi^2.
double fidelity_limit_1d() noexcept;

}  // namespace cobed
