#include "cobed/basis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cobed {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i; split i across both factors
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    if (result / g > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    result = result / g * factor;
  }
  return result;
}

// ---------------------------------------------------------------- FullBasis

FullBasis::FullBasis(const LatticeGeometry& geom, std::size_t pairs)
    : geom_(geom), pairs_(pairs), size_(0) {
  const std::size_t m = geom.site_count();
  if (pairs == 0 || pairs > m) {
    throw std::invalid_argument("pair count " + std::to_string(pairs) +
                                " outside [1, " + std::to_string(m) + "]");
  }
  const std::uint64_t count = binomial(m, pairs);
  if (count > kMaxBasisSize) {
    throw std::length_error("basis of C(" + std::to_string(m) + ", " +
                            std::to_string(pairs) + ") configurations is too large");
  }
  size_ = static_cast<std::size_t>(count);

  binom_.resize(m * (pairs + 1));
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t i = 0; i <= pairs; ++i) binom_[v * (pairs + 1) + i] = binomial(v, i);
  }

  sites_.resize(size_ * pairs_);
  PairConfiguration current(pairs);
  for (std::size_t i = 0; i < pairs; ++i) current[i] = static_cast<Site>(i);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    std::copy(current.begin(), current.end(), sites_.begin() + idx * pairs_);
    // advance to the lexicographic successor
    std::size_t pos = pairs;
    while (pos > 0 && current[pos - 1] == m - pairs + pos - 1) --pos;
    if (pos == 0) break;
    ++current[pos - 1];
    for (std::size_t j = pos; j < pairs; ++j) current[j] = current[j - 1] + 1;
  }
}

BasisKey FullBasis::key() const {
  return {BasisKind::pair_configurations, geom_.rows(), geom_.cols(), pairs_, 0, 0, size_};
}

std::size_t FullBasis::rank(std::span<const Site> sorted) const {
  assert(sorted.size() == pairs_);
  // Reflecting sites through M-1 turns lexicographic order into reversed
  // colexicographic order, whose rank is a plain sum of binomials.
  const std::size_t m = geom_.site_count();
  std::uint64_t colex = 0;
  for (std::size_t i = 0; i < pairs_; ++i) {
    const std::size_t reflected = m - 1 - sorted[pairs_ - 1 - i];
    colex += binom_[reflected * (pairs_ + 1) + i + 1];
  }
  return size_ - 1 - static_cast<std::size_t>(colex);
}

PairConfiguration FullBasis::unrank(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("configuration index out of range");
  const auto c = (*this)[index];
  return {c.begin(), c.end()};
}

std::vector<PairConfiguration> enumerate_full_basis(const LatticeGeometry& geom,
                                                    std::size_t pairs) {
  const FullBasis basis(geom, pairs);
  std::vector<PairConfiguration> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(basis.unrank(i));
  return out;
}

// --------------------------------------------------------------- OrbitTable

OrbitTable::OrbitTable(std::shared_ptr<const FullBasis> full)
    : full_(std::move(full)), group_(cobed::translations(full_->geometry())) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t dim = full_->size();
  orbit_of_.assign(dim, unset);
  translation_of_.assign(dim, unset);
  stabilizer_offsets_.push_back(0);

  PairConfiguration image(full_->pairs());
  for (std::size_t i = 0; i < dim; ++i) {
    if (orbit_of_[i] != unset) continue;
    const auto orbit = static_cast<std::uint32_t>(representatives_.size());
    std::size_t members = 0;
    for (std::size_t t = 0; t < group_.size(); ++t) {
      translate((*full_)[i], group_[t], image);
      const std::size_t j = full_->rank(image);
      if (j == i) stabilizers_.push_back(static_cast<std::uint32_t>(t));
      if (orbit_of_[j] == unset) {
        orbit_of_[j] = orbit;
        translation_of_[j] = static_cast<std::uint32_t>(t);
        ++members;
      }
    }
    representatives_.push_back(i);
    orbit_sizes_.push_back(members);
    stabilizer_offsets_.push_back(stabilizers_.size());
  }
}

std::span<const std::uint32_t> OrbitTable::stabilizer(std::size_t orbit) const {
  return {stabilizers_.data() + stabilizer_offsets_[orbit],
          stabilizer_offsets_[orbit + 1] - stabilizer_offsets_[orbit]};
}

void OrbitTable::translate(std::span<const Site> config, const Translation& t,
                           std::span<Site> out) const {
  std::transform(config.begin(), config.end(), out.begin(),
                 [&](Site s) { return t(s); });
  std::sort(out.begin(), out.end());
}

// -------------------------------------------------------------- SectorBasis

SectorBasis::SectorBasis(std::shared_ptr<const OrbitTable> orbits, Momentum k)
    : orbits_(std::move(orbits)), momentum_(k) {
  const auto& geom = orbits_->geometry();
  if (k.kx >= geom.cols() || k.ky >= geom.rows()) {
    throw std::invalid_argument("momentum outside the Brillouin zone");
  }
  const auto& group = orbits_->translations();
  characters_.reserve(group.size());
  for (const auto& t : group) {
    characters_.push_back(std::polar(1.0, momentum_angle(geom, k, t.shift_x, t.shift_y)));
  }

  // An orbit survives iff exp(i theta(s)) = 1 on its whole stabilizer; the
  // test is done in exact integer arithmetic.
  const std::size_t n = geom.rows();
  const std::size_t l = geom.cols();
  state_of_orbit_.assign(orbits_->orbit_count(), -1);
  for (std::size_t o = 0; o < orbits_->orbit_count(); ++o) {
    bool compatible = true;
    for (const auto t : orbits_->stabilizer(o)) {
      const auto& s = group[t];
      if ((k.kx * s.shift_x * n + k.ky * s.shift_y * l) % (n * l) != 0) {
        compatible = false;
        break;
      }
    }
    if (compatible) {
      state_of_orbit_[o] = static_cast<std::ptrdiff_t>(orbit_index_.size());
      orbit_index_.push_back(o);
    }
  }
}

BasisKey SectorBasis::key() const {
  const auto& g = geometry();
  return {BasisKind::momentum_sector, g.rows(), g.cols(), pairs(),
          momentum_.kx, momentum_.ky, size()};
}

double SectorBasis::norm(std::size_t state) const {
  return std::sqrt(static_cast<double>(orbit_size(state)));
}

SectorBasis build_sector_basis(const LatticeGeometry& geom, std::size_t pairs, Momentum k) {
  auto full = std::make_shared<const FullBasis>(geom, pairs);
  auto orbits = std::make_shared<const OrbitTable>(std::move(full));
  return SectorBasis(std::move(orbits), k);
}

namespace {

template <class Scalar>
BasicStateVector<Scalar> lift(const BasicStateVector<Scalar>& v, const SectorBasis& basis) {
  if (v.basis != basis.key()) throw BasisMismatch(basis.key(), v.basis);
  if (v.size() != basis.size()) throw std::invalid_argument("amplitude count differs from basis");
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("sector vector must be normalized");
  }
  const auto& full = basis.full();
  const auto& orbits = basis.orbits();
  BasicStateVector<Scalar> out{full.key(), std::vector<Scalar>(full.size(), Scalar{})};
  for (std::size_t c = 0; c < full.size(); ++c) {
    const auto state = basis.state_of_orbit(orbits.orbit_of(c));
    if (state < 0) continue;
    const auto s = static_cast<std::size_t>(state);
    const Scalar amp = v.amplitudes[s] / basis.norm(s);
    if constexpr (std::is_same_v<Scalar, double>) {
      out.amplitudes[c] = amp;
    } else {
      out.amplitudes[c] = amp * std::conj(basis.character(orbits.translation_of(c)));
    }
  }
  return out;
}

}  // namespace

StateVector lift_to_full(const StateVector& v, const SectorBasis& basis) {
  if (!basis.momentum().is_zero()) {
    throw std::invalid_argument("real sector vectors exist only at zero momentum");
  }
  return lift(v, basis);
}

ComplexStateVector lift_to_full(const ComplexStateVector& v, const SectorBasis& basis) {
  return lift(v, basis);
}

}  // namespace cobed
