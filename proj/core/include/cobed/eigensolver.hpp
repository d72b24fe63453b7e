#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "cobed/sparse_matrix.hpp"
#include "cobed/state.hpp"

namespace cobed {

struct SolverOptions {
  /// Convergence: ||H v - lambda v|| <= tolerance * max(1, |lambda|).
  double tolerance = 1e-12;
  std::uint64_t seed = 1;
  /// Budget of matrix-vector products over all restarts.
  std::size_t max_iterations = 50'000;
  /// Lanczos vectors kept before restarting from the current Ritz vector.
  std::size_t krylov_dimension = 200;
  /// Dimensions up to this size are diagonalized densely.
  std::size_t dense_threshold = 2000;
  /// Lowest two eigenvalues closer than this (times max(1, |lambda|)) are
  /// flagged as near-degenerate.
  double degeneracy_tolerance = 1e-10;
  /// Estimate the second eigenvalue on the Lanczos path (one extra deflated run).
  bool check_degeneracy = true;
};

template <class Scalar>
struct EigenResult {
  double eigenvalue = 0.0;
  BasicStateVector<Scalar> eigenvector;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool near_degenerate = false;
  bool dense = false;
  /// Next eigenvalue (estimate on the Lanczos path); NaN when unavailable.
  double second_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  /// Smallest Ritz value after each Lanczos step.
  std::vector<double> ritz_history;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double residual, std::size_t iterations);
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// Lowest eigenpair: dense below options.dense_threshold, Lanczos above.
/// The eigenvector's largest-magnitude amplitude is made real and positive.
/// Throws ConvergenceError if the Lanczos iteration runs out of budget.
template <class Scalar>
EigenResult<Scalar> ground_state(const SparseHamiltonian<Scalar>& h,
                                 const SolverOptions& options = {});

/// Lanczos with full reorthogonalization, restricted to the orthogonal
/// complement of `deflate` (orthonormal vectors). Never throws on
/// non-convergence; inspect `converged`.
template <class Scalar>
EigenResult<Scalar> lanczos_ground_state(const SparseHamiltonian<Scalar>& h,
                                         const SolverOptions& options = {},
                                         std::span<const BasicStateVector<Scalar>> deflate = {});

template <class Scalar>
EigenResult<Scalar> dense_ground_state(const SparseHamiltonian<Scalar>& h,
                                       const SolverOptions& options = {});

/// All eigenvalues in ascending order (dense).
template <class Scalar>
std::vector<double> dense_spectrum(const SparseHamiltonian<Scalar>& h);

/// Lowest `count` eigenvectors from the dense solver, e.g. to span a degenerate subspace.
template <class Scalar>
std::vector<BasicStateVector<Scalar>> dense_lowest_states(const SparseHamiltonian<Scalar>& h,
                                                          std::size_t count);

}  // namespace cobed
