#include "cobed/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <type_traits>

namespace cobed {

ConvergenceError::ConvergenceError(double residual, std::size_t iterations)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "Lanczos did not converge after " << iterations
           << " iterations (residual " << residual << ")";
        return os.str();
      }()),
      residual_(residual),
      iterations_(iterations) {}

namespace {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
Scalar dot(std::span<const Scalar> u, std::span<const Scalar> v) {
  Scalar acc{};
  for (std::size_t i = 0; i < u.size(); ++i) acc += conjugate(u[i]) * v[i];
  return acc;
}

template <class Scalar>
double norm2(std::span<const Scalar> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

template <class Scalar>
void axpy(Scalar a, std::span<const Scalar> x, std::span<Scalar> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

template <class Scalar>
void scale(std::span<Scalar> v, double s) {
  for (auto& x : v) x *= s;
}

// Uniform deviates built from raw 64-bit draws so the start vector does not
// depend on the standard library's distribution implementations.
double draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
}

template <class Scalar>
std::vector<Scalar> random_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Scalar> v(dim);
  for (auto& x : v) {
    if constexpr (std::is_same_v<Scalar, double>) {
      x = draw(gen);
    } else {
      const double re = draw(gen);
      x = Scalar(re, draw(gen));
    }
  }
  return v;
}

/// Gram-Schmidt against a set of orthonormal vectors, two passes.
template <class Scalar>
void orthogonalize(std::span<Scalar> w, const std::vector<std::vector<Scalar>>& basis,
                   std::span<const BasicStateVector<Scalar>> deflate) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& d : deflate) {
      std::span<const Scalar> u(d.amplitudes);
      axpy<Scalar>(-dot<Scalar>(u, w), u, w);
    }
    for (const auto& b : basis) {
      std::span<const Scalar> u(b);
      axpy<Scalar>(-dot<Scalar>(u, w), u, w);
    }
  }
}

template <class Scalar>
void fix_phase(std::vector<Scalar>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v.empty() || std::abs(v[best]) == 0.0) return;
  const Scalar phase = conjugate(v[best]) / std::abs(v[best]);
  for (auto& x : v) x *= phase;
  if constexpr (!std::is_same_v<Scalar, double>) v[best] = Scalar(std::abs(v[best]), 0.0);
}

template <class Scalar>
double residual_norm(const SparseHamiltonian<Scalar>& h, std::span<const Scalar> v,
                     double lambda) {
  std::vector<Scalar> hv(v.size());
  h.apply(v, hv);
  axpy<Scalar>(Scalar(-lambda), v, hv);
  return norm2<Scalar>(hv);
}

/// Dense copy with the mean diagonal removed. The pair Hamiltonians carry a
/// large constant offset; diagonalizing without it keeps eigenvector errors
/// proportional to the spectral width instead of |E|.
template <class Scalar>
struct ShiftedDense {
  DenseMatrix<Scalar> matrix;
  double shift = 0.0;
};

template <class Scalar>
ShiftedDense<Scalar> as_dense(const SparseHamiltonian<Scalar>& h) {
  const std::size_t dim = h.dimension();
  ShiftedDense<Scalar> out;
  out.matrix = DenseMatrix<Scalar>::Zero(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(dim));
  const auto offsets = h.row_offsets();
  const auto cols = h.columns();
  const auto vals = h.values();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p) {
      out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[p])) = vals[p];
    }
  }
  if (dim > 0) out.shift = std::real(out.matrix.trace()) / static_cast<double>(dim);
  out.matrix.diagonal().array() -= Scalar(out.shift);
  return out;
}

double relative_bound(double tolerance, double lambda) {
  return tolerance * std::max(1.0, std::abs(lambda));
}

}  // namespace

template <class Scalar>
EigenResult<Scalar> dense_ground_state(const SparseHamiltonian<Scalar>& h,
                                       const SolverOptions& options) {
  if (h.dimension() == 0) throw std::invalid_argument("empty operator");
  const auto dense = as_dense(h);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(dense.matrix);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");

  EigenResult<Scalar> result;
  result.dense = true;
  result.eigenvalue = solver.eigenvalues()(0) + dense.shift;
  result.eigenvector.basis = h.basis();
  const auto col = solver.eigenvectors().col(0);
  result.eigenvector.amplitudes.assign(col.data(), col.data() + col.size());
  result.eigenvector.normalize();
  fix_phase(result.eigenvector.amplitudes);
  result.residual = residual_norm<Scalar>(h, result.eigenvector.amplitudes, result.eigenvalue);
  result.converged = true;
  if (h.dimension() > 1) {
    result.second_eigenvalue = solver.eigenvalues()(1) + dense.shift;
    result.near_degenerate =
        result.second_eigenvalue - result.eigenvalue <=
        relative_bound(options.degeneracy_tolerance, result.eigenvalue);
  }
  return result;
}

template <class Scalar>
EigenResult<Scalar> lanczos_ground_state(const SparseHamiltonian<Scalar>& h,
                                         const SolverOptions& options,
                                         std::span<const BasicStateVector<Scalar>> deflate) {
  const std::size_t dim = h.dimension();
  if (dim == 0) throw std::invalid_argument("empty operator");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t max_krylov = std::max<std::size_t>(2, options.krylov_dimension);

  EigenResult<Scalar> result;
  result.eigenvector.basis = h.basis();

  std::vector<Scalar> start = random_vector<Scalar>(dim, options.seed);
  orthogonalize<Scalar>(start, {}, deflate);
  {
    const double n = norm2<Scalar>(start);
    if (n == 0.0) throw std::invalid_argument("deflation space covers the whole operator");
    scale<Scalar>(start, 1.0 / n);
  }

  std::vector<std::vector<Scalar>> krylov;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<Scalar> w(dim);

  while (true) {
    krylov.assign(1, start);
    alphas.clear();
    betas.clear();
    Eigen::VectorXd ritz_coeffs;
    double theta = 0.0;
    double beta = 0.0;

    for (std::size_t j = 0;; ++j) {
      h.apply(krylov[j], w);
      ++result.iterations;
      const double alpha = std::real(dot<Scalar>(krylov[j], w));
      axpy<Scalar>(Scalar(-alpha), krylov[j], w);
      if (j > 0) axpy<Scalar>(Scalar(-betas[j - 1]), krylov[j - 1], w);
      orthogonalize<Scalar>(w, krylov, deflate);
      beta = norm2<Scalar>(w);
      alphas.push_back(alpha);

      const auto m = static_cast<Eigen::Index>(alphas.size());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alphas.data(), m);
      Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                        betas.data(), m - 1))
                                  : Eigen::VectorXd(0);
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()(0);
      ritz_coeffs = tri.eigenvectors().col(0);
      result.ritz_history.push_back(theta);

      const double estimate = beta * std::abs(ritz_coeffs(m - 1));
      const bool exhausted = beta <= 1e-14 * std::max(1.0, std::abs(theta)) ||
                             krylov.size() + deflate.size() >= dim;
      if (estimate <= relative_bound(options.tolerance, theta) || exhausted ||
          krylov.size() >= max_krylov || result.iterations >= options.max_iterations) {
        break;
      }
      betas.push_back(beta);
      for (auto& x : w) x /= beta;
      krylov.push_back(w);
    }

    // Ritz vector from the current Krylov space.
    std::vector<Scalar> x(dim, Scalar{});
    for (std::size_t i = 0; i < krylov.size(); ++i) {
      axpy<Scalar>(Scalar(ritz_coeffs(static_cast<Eigen::Index>(i))), krylov[i], x);
    }
    orthogonalize<Scalar>(x, {}, deflate);
    scale<Scalar>(x, 1.0 / norm2<Scalar>(x));
    const double rq = std::real(h.expectation(x, x));
    const double residual = residual_norm<Scalar>(h, x, rq);

    result.eigenvalue = rq;
    result.residual = residual;
    result.eigenvector.amplitudes = std::move(x);
    if (residual <= relative_bound(options.tolerance, rq)) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iterations) break;
    start = result.eigenvector.amplitudes;
  }
  fix_phase(result.eigenvector.amplitudes);
  return result;
}

template <class Scalar>
EigenResult<Scalar> ground_state(const SparseHamiltonian<Scalar>& h,
                                 const SolverOptions& options) {
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (h.dimension() <= options.dense_threshold) return dense_ground_state(h, options);

  auto result = lanczos_ground_state(h, options);
  if (!result.converged) throw ConvergenceError(result.residual, result.iterations);
  if (options.check_degeneracy && h.dimension() > 1) {
    SolverOptions second = options;
    second.tolerance = std::max(options.tolerance, 1e-9);
    second.seed = options.seed + 1;
    const std::vector<BasicStateVector<Scalar>> ground{result.eigenvector};
    const auto next = lanczos_ground_state<Scalar>(h, second, ground);
    result.second_eigenvalue = next.eigenvalue;
    result.near_degenerate = next.eigenvalue - result.eigenvalue <=
                             relative_bound(options.degeneracy_tolerance, result.eigenvalue);
  }
  return result;
}

template <class Scalar>
std::vector<double> dense_spectrum(const SparseHamiltonian<Scalar>& h) {
  const auto dense = as_dense(h);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(dense.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  std::vector<double> out(solver.eigenvalues().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i)) + dense.shift;
  }
  return out;
}

template <class Scalar>
std::vector<BasicStateVector<Scalar>> dense_lowest_states(const SparseHamiltonian<Scalar>& h,
                                                          std::size_t count) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(as_dense(h).matrix);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  count = std::min(count, h.dimension());
  std::vector<BasicStateVector<Scalar>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(i));
    out.push_back({h.basis(), {col.data(), col.data() + col.size()}});
  }
  return out;
}

#define COBED_INSTANTIATE(S)                                                              \
  template EigenResult<S> ground_state(const SparseHamiltonian<S>&, const SolverOptions&); \
  template EigenResult<S> lanczos_ground_state(const SparseHamiltonian<S>&,               \
                                               const SolverOptions&,                      \
                                               std::span<const BasicStateVector<S>>);     \
  template EigenResult<S> dense_ground_state(const SparseHamiltonian<S>&,                 \
                                             const SolverOptions&);                       \
  template std::vector<double> dense_spectrum(const SparseHamiltonian<S>&);               \
  template std::vector<BasicStateVector<S>> dense_lowest_states(const SparseHamiltonian<S>&, \
                                                                std::size_t);

COBED_INSTANTIATE(double)
COBED_INSTANTIATE(std::complex<double>)

#undef COBED_INSTANTIATE

}  // namespace cobed
