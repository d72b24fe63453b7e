#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cobed/state.hpp"

namespace cobed {

inline double conjugate(double x) noexcept { return x; }
inline std::complex<double> conjugate(std::complex<double> x) noexcept { return std::conj(x); }

/// Hermitian operator in compressed-row form. Every row stores its diagonal.
template <class Scalar>
class SparseHamiltonian {
 public:
  using scalar_type = Scalar;

  SparseHamiltonian() = default;

  const BasisKey& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.dimension; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return offsets_; }
  std::span<const std::size_t> columns() const noexcept { return columns_; }
  std::span<const Scalar> values() const noexcept { return values_; }

  /// y = H x. Safe to call concurrently.
  void apply(std::span<const Scalar> x, std::span<Scalar> y) const;

  Scalar element(std::size_t row, std::size_t col) const;
  Scalar diagonal(std::size_t row) const { return element(row, row); }

  /// max |H_ij - conj(H_ji)| over stored entries (and their missing partners).
  double max_asymmetry() const;

  /// Row-major dense copy; meant for small dimensions.
  std::vector<Scalar> to_dense() const;

  /// <u|H|v>
  Scalar expectation(std::span<const Scalar> u, std::span<const Scalar> v) const;

 private:
  template <class>
  friend class SparseBuilder;

  BasisKey basis_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> columns_;
  std::vector<Scalar> values_;
};

/// Accumulates a SparseHamiltonian row by row; duplicate entries in a row are summed.
template <class Scalar>
class SparseBuilder {
 public:
  explicit SparseBuilder(BasisKey key);

  void add(std::size_t col, Scalar value) { pending_.emplace_back(col, value); }
  void end_row();
  SparseHamiltonian<Scalar> finish() &&;

 private:
  SparseHamiltonian<Scalar> matrix_;
  std::vector<std::pair<std::size_t, Scalar>> pending_;
};

extern template class SparseHamiltonian<double>;
extern template class SparseHamiltonian<std::complex<double>>;
extern template class SparseBuilder<double>;
extern template class SparseBuilder<std::complex<double>>;

}  // namespace cobed
