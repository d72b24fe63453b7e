#include "cobed/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cobed {

double ModelParameters::perturbative_ratio() const noexcept {
  return std::max(std::abs(jx), std::abs(jy)) / u0;
}

void ModelParameters::validate() const {
  if (!(u0 > 0.0) || !std::isfinite(u0)) {
    throw std::invalid_argument("U0 must be positive and finite");
  }
  if (!std::isfinite(jx) || !std::isfinite(jy)) {
    throw std::invalid_argument("tunneling amplitudes must be finite");
  }
}

double ModelParameters::binding_constant(const LatticeGeometry& geom) const noexcept {
  double per_pair = u0;
  if (geom.extent(Direction::x) >= 2) per_pair += vx();
  if (geom.extent(Direction::y) >= 2) per_pair += vy();
  return static_cast<double>(pairs) * per_pair;
}

namespace {

struct Neighbour {
  Site site;
  double weight;
};

/// Incident bonds per site; a bond listed twice contributes twice.
std::vector<std::vector<Neighbour>> weighted_adjacency(const LatticeGeometry& geom,
                                                       double wx, double wy) {
  std::vector<std::vector<Neighbour>> adj(geom.site_count());
  for (const auto& [dir, w] : {std::pair{Direction::x, wx}, std::pair{Direction::y, wy}}) {
    for (const auto& [a, b] : bonds(geom, dir)) {
      adj[a].push_back({b, w});
      adj[b].push_back({a, w});
    }
  }
  return adj;
}

/// Applies the effective pair Hamiltonian to one configuration: returns the
/// diagonal element and calls emit(sorted target, amplitude) for every hop.
class EffectiveAction {
 public:
  EffectiveAction(const LatticeGeometry& geom, const ModelParameters& params)
      : adj_(weighted_adjacency(geom, params.vx(), params.vy())),
        constant_(-params.binding_constant(geom)),
        occupied_(geom.site_count(), 0) {}

  template <class Emit>
  double operator()(std::span<const Site> config, Emit&& emit) {
    for (const auto s : config) occupied_[s] = 1;
    double diag = constant_;
    target_.assign(config.begin(), config.end());
    for (std::size_t p = 0; p < config.size(); ++p) {
      for (const auto& nb : adj_[config[p]]) {
        if (occupied_[nb.site]) {
          diag += 0.5 * nb.weight;  // each bond is seen from both ends
          continue;
        }
        target_[p] = nb.site;
        std::sort(target_.begin(), target_.end());
        emit(std::span<const Site>(target_), -0.5 * nb.weight);
        target_.assign(config.begin(), config.end());
      }
    }
    for (const auto s : config) occupied_[s] = 0;
    return diag;
  }

 private:
  std::vector<std::vector<Neighbour>> adj_;
  double constant_;
  std::vector<char> occupied_;
  std::vector<Site> target_;
};

void check_effective_inputs(const LatticeGeometry& geom, const ModelParameters& params,
                            const LatticeGeometry& basis_geom, std::size_t basis_pairs) {
  params.validate();
  if (!(geom == basis_geom)) {
    throw std::invalid_argument("basis geometry " + basis_geom.describe() +
                                " does not match " + geom.describe());
  }
  if (params.pairs != basis_pairs) {
    throw std::invalid_argument("basis holds " + std::to_string(basis_pairs) +
                                " pairs but the model has " + std::to_string(params.pairs));
  }
}

template <class Scalar>
SparseHamiltonian<Scalar> effective_in_sector(const LatticeGeometry& geom,
                                              const ModelParameters& params,
                                              const SectorBasis& basis) {
  check_effective_inputs(geom, params, basis.geometry(), basis.pairs());
  const auto& full = basis.full();
  const auto& orbits = basis.orbits();
  EffectiveAction action(geom, params);
  SparseBuilder<Scalar> builder(basis.key());
  // <r'|H|r> = sqrt(|r| / |r'|) sum_{c in orbit r'} exp(i theta(t_c)) <c|H|r>
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const double norm = basis.norm(s);
    const double diag = action(basis.representative(s), [&](std::span<const Site> target,
                                                             double amp) {
      const std::size_t c = full.rank(target);
      const auto target_state = basis.state_of_orbit(orbits.orbit_of(c));
      if (target_state < 0) return;
      const auto t = static_cast<std::size_t>(target_state);
      const double scale = amp * norm / basis.norm(t);
      if constexpr (std::is_same_v<Scalar, double>) {
        builder.add(t, scale);
      } else {
        builder.add(t, scale * basis.character(orbits.translation_of(c)));
      }
    });
    builder.add(s, Scalar{diag});
    builder.end_row();
  }
  return std::move(builder).finish();
}

}  // namespace

SparseHamiltonian<double> build_effective(const LatticeGeometry& geom,
                                          const ModelParameters& params,
                                          const FullBasis& basis) {
  check_effective_inputs(geom, params, basis.geometry(), basis.pairs());
  EffectiveAction action(geom, params);
  SparseBuilder<double> builder(basis.key());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double diag = action(basis[i], [&](std::span<const Site> target, double amp) {
      builder.add(basis.rank(target), amp);
    });
    builder.add(i, diag);
    builder.end_row();
  }
  return std::move(builder).finish();
}

SparseHamiltonian<double> build_effective(const LatticeGeometry& geom,
                                          const ModelParameters& params,
                                          const SectorBasis& basis) {
  if (!basis.momentum().is_zero()) {
    throw std::invalid_argument("a real sector Hamiltonian requires zero momentum");
  }
  return effective_in_sector<double>(geom, params, basis);
}

SparseHamiltonian<std::complex<double>> build_effective_complex(
    const LatticeGeometry& geom, const ModelParameters& params, const SectorBasis& basis) {
  return effective_in_sector<std::complex<double>>(geom, params, basis);
}

// ---------------------------------------------------------- full fermion model

namespace {

/// Moves one fermion of a sorted occupation list from `from` to `to` (empty).
/// Returns the Jordan-Wigner sign: -1 per occupied site strictly between them.
int hop_fermion(std::span<const Site> config, Site from, Site to, std::vector<Site>& out) {
  const Site lo = std::min(from, to);
  const Site hi = std::max(from, to);
  int between = 0;
  out.clear();
  for (const auto s : config) {
    if (s > lo && s < hi) ++between;
    out.push_back(s == from ? to : s);
  }
  std::sort(out.begin(), out.end());
  return between % 2 == 0 ? 1 : -1;
}

}  // namespace

SparseHamiltonian<double> build_full(const LatticeGeometry& geom,
                                     const ModelParameters& params, std::size_t size_limit) {
  params.validate();
  const FullBasis species(geom, params.pairs);
  const std::size_t n = species.size();
  if (n > size_limit / n) {
    throw std::length_error("two-species basis of " + std::to_string(n) + "^2 states exceeds " +
                            std::to_string(size_limit));
  }
  std::vector<std::pair<Bond, double>> hops;
  for (const auto& b : bonds(geom, Direction::x)) hops.push_back({b, 0.5 * params.jx});
  for (const auto& b : bonds(geom, Direction::y)) hops.push_back({b, 0.5 * params.jy});

  BasisKey key{BasisKind::two_species_fermions, geom.rows(), geom.cols(), params.pairs,
               0, 0, n * n};
  SparseBuilder<double> builder(key);
  std::vector<char> occ_a(geom.site_count()), occ_b(geom.site_count());
  std::vector<Site> moved;

  // Hops of one species with the other held fixed; `place` maps the moved
  // species' new rank to the full product index.
  const auto add_hops = [&](std::span<const Site> config, const std::vector<char>& occ,
                            auto place) {
    for (const auto& [bond, amp] : hops) {
      const auto [i, j] = bond;
      if (occ[i] == occ[j]) continue;
      const Site from = occ[i] ? i : j;
      const Site to = occ[i] ? j : i;
      const int sign = hop_fermion(config, from, to, moved);
      builder.add(place(species.rank(moved)), sign * amp);
    }
  };

  for (std::size_t ia = 0; ia < n; ++ia) {
    const auto a = species[ia];
    std::fill(occ_a.begin(), occ_a.end(), 0);
    for (const auto s : a) occ_a[s] = 1;
    for (std::size_t ib = 0; ib < n; ++ib) {
      const auto b = species[ib];
      std::fill(occ_b.begin(), occ_b.end(), 0);
      double diag = 0.0;
      for (const auto s : b) {
        occ_b[s] = 1;
        if (occ_a[s]) diag -= params.u0;
      }
      add_hops(a, occ_a, [&](std::size_t ra) { return ra * n + ib; });
      add_hops(b, occ_b, [&](std::size_t rb) { return ia * n + rb; });
      builder.add(ia * n + ib, diag);
      builder.end_row();
    }
  }
  return std::move(builder).finish();
}

// --------------------------------------------------------- Heisenberg image

std::vector<std::uint64_t> spin_sector_states(std::size_t length, std::size_t up) {
  if (length == 0 || length > 63 || up > length) {
    throw std::invalid_argument("spin sector needs 1 <= length <= 63 and up <= length");
  }
  std::vector<std::uint64_t> states;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) == up) states.push_back(mask);
  }
  return states;
}

SparseHamiltonian<double> heisenberg_image(const LatticeGeometry& geom,
                                           const ModelParameters& params) {
  params.validate();
  if (!geom.is_ring()) throw std::invalid_argument("Heisenberg mapping needs a 1 x L ring");
  const std::size_t length = geom.cols();
  if (length % 2 != 0) {
    throw std::invalid_argument("Heisenberg mapping needs an even number of sites");
  }
  const auto states = spin_sector_states(length, params.pairs);
  const auto index_of = [&](std::uint64_t mask) {
    return static_cast<std::size_t>(std::lower_bound(states.begin(), states.end(), mask) -
                                    states.begin());
  };
  const double scale = params.vx() / 4.0;
  const double shift = -static_cast<double>(params.pairs) * params.u0 -
                       scale * static_cast<double>(length);

  BasisKey key{BasisKind::spin_sector, 1, length, params.pairs, 0, 0, states.size()};
  SparseBuilder<double> builder(key);
  const auto ring_bonds = bonds(geom, Direction::x);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::uint64_t mask = states[i];
    double diag = shift;
    for (const auto& [a, b] : ring_bonds) {
      const bool up_a = (mask >> a) & 1U;
      const bool up_b = (mask >> b) & 1U;
      // sigma^z sigma^z = +-1; sigma^x sigma^x + sigma^y sigma^y flips an
      // antiparallel pair with amplitude 2.
      diag += scale * (up_a == up_b ? 1.0 : -1.0);
      if (up_a != up_b) {
        const std::uint64_t flipped = mask ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
        builder.add(index_of(flipped), 2.0 * scale);
      }
    }
    builder.add(i, diag);
    builder.end_row();
  }
  return std::move(builder).finish();
}

}  // namespace cobed
