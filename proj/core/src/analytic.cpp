#include "cobed/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cobed {

namespace {

void require_ring(const LatticeGeometry& geom) {
  if (!geom.is_ring()) throw std::invalid_argument("closed forms are for 1 x L rings");
}

void require_two_pair_length(std::size_t length) {
  if (length < 3) throw std::invalid_argument("two-pair closed forms need L >= 3");
}

}  // namespace

std::vector<std::pair<std::size_t, double>> single_pair_spectrum(const LatticeGeometry& geom,
                                                                 const ModelParameters& params) {
  require_ring(geom);
  params.validate();
  const std::size_t length = geom.cols();
  const double v = params.vx();
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(k) /
                              static_cast<double>(length));
    out.emplace_back(k, -params.u0 - 2.0 * v * c * c);
  }
  return out;
}

TwoPairExactState::TwoPairExactState(std::size_t length) : length_(length), norm_(0.0) {
  require_two_pair_length(length);
  // L configurations at every distance d < L/2, L/2 of them at d = L/2.
  double sum = 0.0;
  for (std::size_t d = 1; 2 * d <= length; ++d) {
    const double s = std::sin(std::numbers::pi * (static_cast<double>(d) - 0.5) /
                              static_cast<double>(length - 1));
    const double multiplicity =
        2 * d == length ? static_cast<double>(length) / 2.0 : static_cast<double>(length);
    sum += multiplicity * s * s;
  }
  norm_ = 1.0 / std::sqrt(sum);
}

std::size_t TwoPairExactState::ring_distance(Site a, Site b, std::size_t length) noexcept {
  const std::size_t gap = a > b ? a - b : b - a;
  return std::min(gap, length - gap);
}

double TwoPairExactState::amplitude_at_distance(std::size_t d) const {
  if (d == 0 || d >= length_) throw std::invalid_argument("pair distance out of range");
  return norm_ * std::sin(std::numbers::pi * (static_cast<double>(d) - 0.5) /
                          static_cast<double>(length_ - 1));
}

StateVector TwoPairExactState::on(const FullBasis& basis) const {
  const auto& geom = basis.geometry();
  if (!geom.is_ring() || geom.cols() != length_ || basis.pairs() != 2) {
    throw std::invalid_argument("basis must be the two-pair basis of the same ring");
  }
  StateVector v{basis.key(), std::vector<double>(basis.size())};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto c = basis[i];
    v.amplitudes[i] = amplitude(c[0], c[1]);
  }
  return v;
}

double two_pair_exact_energy(std::size_t length, const ModelParameters& params) {
  require_two_pair_length(length);
  params.validate();
  const double c = std::cos(std::numbers::pi / (2.0 * static_cast<double>(length - 1)));
  return -2.0 * params.u0 - 4.0 * params.vx() * c * c;
}

double two_pair_ansatz_energy(std::size_t length, const ModelParameters& params) {
  require_two_pair_length(length);
  params.validate();
  const double v = params.vx();
  return -2.0 * params.u0 - 4.0 * v + 4.0 * v / static_cast<double>(length - 1);
}

double analytic_fidelity_1d(std::size_t length) {
  // <ansatz|exact> = C(L,2)^{-1/2} sum over configurations of the exact amplitudes.
  const TwoPairExactState exact(length);
  double overlap = 0.0;
  for (std::size_t d = 1; 2 * d <= length; ++d) {
    const double multiplicity =
        2 * d == length ? static_cast<double>(length) / 2.0 : static_cast<double>(length);
    overlap += multiplicity * exact.amplitude_at_distance(d);
  }
  const double pairs = static_cast<double>(length) * static_cast<double>(length - 1) / 2.0;
  overlap /= std::sqrt(pairs);
  return overlap * overlap;
}

double fidelity_limit_1d() noexcept { return 8.0 / (std::numbers::pi * std::numbers::pi); }

}  // namespace cobed
