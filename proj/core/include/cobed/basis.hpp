#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cobed/lattice.hpp"
#include "cobed/state.hpp"

namespace cobed {

/// Occupied sites of an N-pair hard-core configuration, strictly increasing.
using PairConfiguration = std::vector<Site>;

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Largest number of configurations a FullBasis will materialize.
inline constexpr std::uint64_t kMaxBasisSize = std::uint64_t{1} << 25;

/// All C(M, N) configurations of N hard-core pairs on M sites, in
/// lexicographic order of the sorted occupied-site lists.
class FullBasis {
 public:
  FullBasis(const LatticeGeometry& geom, std::size_t pairs);

  const LatticeGeometry& geometry() const noexcept { return geom_; }
  std::size_t pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return size_; }
  BasisKey key() const;

  std::span<const Site> operator[](std::size_t index) const {
    return {sites_.data() + index * pairs_, pairs_};
  }

  /// Lexicographic rank of a strictly increasing site list.
  std::size_t rank(std::span<const Site> sorted) const;
  PairConfiguration unrank(std::size_t index) const;

 private:
  LatticeGeometry geom_;
  std::size_t pairs_;
  std::size_t size_;
  std::vector<Site> sites_;
  // binom_[v * (pairs_ + 1) + i] = C(v, i)
  std::vector<std::uint64_t> binom_;
};

std::vector<PairConfiguration> enumerate_full_basis(const LatticeGeometry& geom,
                                                    std::size_t pairs);

/// Partition of a FullBasis into orbits of the translation group.
///
/// For every configuration c the table stores the orbit it belongs to and the
/// index of a translation t with t(representative) = c. Representatives are
/// the lexicographically smallest members of their orbits.
class OrbitTable {
 public:
  explicit OrbitTable(std::shared_ptr<const FullBasis> full);

  const FullBasis& full() const noexcept { return *full_; }
  const std::shared_ptr<const FullBasis>& full_ptr() const noexcept { return full_; }
  const LatticeGeometry& geometry() const noexcept { return full_->geometry(); }
  const std::vector<Translation>& translations() const noexcept { return group_; }

  std::size_t orbit_count() const noexcept { return representatives_.size(); }
  std::size_t representative(std::size_t orbit) const { return representatives_[orbit]; }
  std::size_t orbit_size(std::size_t orbit) const { return orbit_sizes_[orbit]; }
  /// Translations (by index) that leave the representative unchanged.
  std::span<const std::uint32_t> stabilizer(std::size_t orbit) const;

  std::uint32_t orbit_of(std::size_t full_index) const { return orbit_of_[full_index]; }
  std::uint32_t translation_of(std::size_t full_index) const {
    return translation_of_[full_index];
  }

  /// Sorted image of a configuration under a translation.
  void translate(std::span<const Site> config, const Translation& t,
                 std::span<Site> out) const;

 private:
  std::shared_ptr<const FullBasis> full_;
  std::vector<Translation> group_;
  std::vector<std::size_t> representatives_;
  std::vector<std::size_t> orbit_sizes_;
  std::vector<std::size_t> stabilizer_offsets_;
  std::vector<std::uint32_t> stabilizers_;
  std::vector<std::uint32_t> orbit_of_;
  std::vector<std::uint32_t> translation_of_;
};

/// Momentum-k subspace spanned by the orbit states
///   |r, k> = |orbit r|^{-1/2} sum_{c in orbit r} exp(-i theta(t_c)) |c>,
/// where t_c(r) = c and theta is the momentum angle of t_c. Orbits whose
/// stabilizer carries a nontrivial phase have zero norm and are dropped.
class SectorBasis {
 public:
  SectorBasis(std::shared_ptr<const OrbitTable> orbits, Momentum k);

  const OrbitTable& orbits() const noexcept { return *orbits_; }
  const FullBasis& full() const noexcept { return orbits_->full(); }
  const LatticeGeometry& geometry() const noexcept { return orbits_->geometry(); }
  std::size_t pairs() const noexcept { return full().pairs(); }
  const Momentum& momentum() const noexcept { return momentum_; }
  std::size_t size() const noexcept { return orbit_index_.size(); }
  BasisKey key() const;

  std::size_t orbit(std::size_t state) const { return orbit_index_[state]; }
  std::span<const Site> representative(std::size_t state) const {
    return full()[orbits_->representative(orbit_index_[state])];
  }
  std::size_t orbit_size(std::size_t state) const {
    return orbits_->orbit_size(orbit_index_[state]);
  }
  /// Norm of the unnormalized symmetrized sum over the orbit.
  double norm(std::size_t state) const;

  /// Sector index of an orbit, or -1 if the orbit is incompatible with k.
  std::ptrdiff_t state_of_orbit(std::size_t orbit) const { return state_of_orbit_[orbit]; }

  /// exp(+i theta(t)) for the translation with index t.
  std::complex<double> character(std::size_t translation) const {
    return characters_[translation];
  }

 private:
  std::shared_ptr<const OrbitTable> orbits_;
  Momentum momentum_;
  std::vector<std::size_t> orbit_index_;
  std::vector<std::ptrdiff_t> state_of_orbit_;
  std::vector<std::complex<double>> characters_;
};

SectorBasis build_sector_basis(const LatticeGeometry& geom, std::size_t pairs,
                               Momentum k = {});

/// Expands a normalized sector vector into the full configuration basis.
/// Real vectors are accepted only for k = 0.
StateVector lift_to_full(const StateVector& v, const SectorBasis& basis);
ComplexStateVector lift_to_full(const ComplexStateVector& v, const SectorBasis& basis);

}  // namespace cobed
