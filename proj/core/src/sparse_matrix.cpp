#include "cobed/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cobed {

template <class Scalar>
void SparseHamiltonian<Scalar>::apply(std::span<const Scalar> x, std::span<Scalar> y) const {
  const std::size_t dim = dimension();
  if (x.size() != dim || y.size() != dim) {
    throw std::invalid_argument("vector length does not match operator dimension");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    Scalar acc{};
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
      acc += values_[p] * x[columns_[p]];
    }
    y[i] = acc;
  }
}

template <class Scalar>
Scalar SparseHamiltonian<Scalar>::element(std::size_t row, std::size_t col) const {
  const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[row]);
  const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return Scalar{};
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

template <class Scalar>
double SparseHamiltonian<Scalar>::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) {
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
      const Scalar partner = element(columns_[p], i);
      worst = std::max(worst, std::abs(values_[p] - conjugate(partner)));
    }
  }
  return worst;
}

template <class Scalar>
std::vector<Scalar> SparseHamiltonian<Scalar>::to_dense() const {
  const std::size_t dim = dimension();
  std::vector<Scalar> dense(dim * dim, Scalar{});
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
      dense[i * dim + columns_[p]] = values_[p];
    }
  }
  return dense;
}

template <class Scalar>
Scalar SparseHamiltonian<Scalar>::expectation(std::span<const Scalar> u,
                                              std::span<const Scalar> v) const {
  std::vector<Scalar> hv(dimension());
  apply(v, hv);
  Scalar acc{};
  for (std::size_t i = 0; i < hv.size(); ++i) acc += conjugate(u[i]) * hv[i];
  return acc;
}

template <class Scalar>
SparseBuilder<Scalar>::SparseBuilder(BasisKey key) {
  matrix_.basis_ = key;
  matrix_.offsets_.reserve(key.dimension + 1);
}

template <class Scalar>
void SparseBuilder<Scalar>::end_row() {
  const std::size_t row = matrix_.offsets_.size() - 1;
  if (row >= matrix_.dimension()) throw std::logic_error("too many rows");
  pending_.emplace_back(row, Scalar{});
  std::sort(pending_.begin(), pending_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t p = 0; p < pending_.size();) {
    const std::size_t col = pending_[p].first;
    if (col >= matrix_.dimension()) throw std::out_of_range("column index out of range");
    Scalar sum{};
    for (; p < pending_.size() && pending_[p].first == col; ++p) sum += pending_[p].second;
    if (sum != Scalar{} || col == row) {
      matrix_.columns_.push_back(col);
      matrix_.values_.push_back(sum);
    }
  }
  matrix_.offsets_.push_back(matrix_.columns_.size());
  pending_.clear();
}

template <class Scalar>
SparseHamiltonian<Scalar> SparseBuilder<Scalar>::finish() && {
  if (matrix_.offsets_.size() != matrix_.dimension() + 1) {
    throw std::logic_error("sparse matrix is missing rows");
  }
  return std::move(matrix_);
}

template class SparseHamiltonian<double>;
template class SparseHamiltonian<std::complex<double>>;
template class SparseBuilder<double>;
template class SparseBuilder<std::complex<double>>;

}  // namespace cobed
