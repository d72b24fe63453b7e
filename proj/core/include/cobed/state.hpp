#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cobed {

enum class BasisKind {
  pair_configurations,  // all hard-core N-pair configurations
  momentum_sector,      // translation-symmetrized orbit states
  two_species_fermions, // N a-fermions times N b-fermions
  spin_sector,          // spin-1/2 chain at fixed magnetization
};

/// Identifies the basis a vector or operator is expressed in. Two objects can
/// only be combined when their keys compare equal.
struct BasisKey {
  BasisKind kind = BasisKind::pair_configurations;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t pairs = 0;
  std::size_t kx = 0;
  std::size_t ky = 0;
  std::size_t dimension = 0;

  std::string describe() const;
  friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

class BasisMismatch : public std::invalid_argument {
 public:
  BasisMismatch(const BasisKey& expected, const BasisKey& got);
};

template <class Scalar>
struct BasicStateVector {
  BasisKey basis;
  std::vector<Scalar> amplitudes;

  std::size_t size() const noexcept { return amplitudes.size(); }

  double norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
  }

  void normalize() {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    for (auto& a : amplitudes) a /= n;
  }
};

using StateVector = BasicStateVector<double>;
using ComplexStateVector = BasicStateVector<std::complex<double>>;

}  // namespace cobed
