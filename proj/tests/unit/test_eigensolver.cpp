#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>

#include "cobed/basis.hpp"
#include "cobed/eigensolver.hpp"
#include "cobed/hamiltonian.hpp"
#include "support/oracles.hpp"

using namespace cobed;

namespace {

SparseHamiltonian<double> from_dense(const std::vector<std::vector<double>>& rows) {
  BasisKey key{BasisKind::pair_configurations, 1, rows.size(), 1, 0, 0, rows.size()};
  SparseBuilder<double> b(key);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) b.add(j, row[j]);
    b.end_row();
  }
  return std::move(b).finish();
}

SolverOptions lanczos_only() {
  SolverOptions o;
  o.dense_threshold = 0;
  return o;
}

}  // namespace

TEST_CASE("two-by-two example") {
  const double r2 = std::sqrt(2.0);
  const auto h = from_dense({{1.0, -r2}, {-r2, 0.0}});
  for (const auto& opts : {SolverOptions{}, lanczos_only()}) {
    const auto res = ground_state(h, opts);
    CHECK(res.eigenvalue == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(res.eigenvector.amplitudes[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(res.eigenvector.amplitudes[1] == doctest::Approx(r2 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(res.converged);
    CHECK_FALSE(res.near_degenerate);
    CHECK(res.second_eigenvalue == doctest::Approx(2.0));
  }
}

TEST_CASE("identity: any vector, flagged degenerate") {
  const auto h = from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (const auto& opts : {SolverOptions{}, lanczos_only()}) {
    const auto res = ground_state(h, opts);
    CHECK(res.eigenvalue == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(res.eigenvector.norm() == doctest::Approx(1.0));
    CHECK(res.residual < 1e-12);
    CHECK(res.near_degenerate);
  }
}

TEST_CASE("one-dimensional operator") {
  const auto h = from_dense({{-3.5}});
  const auto res = ground_state(h, lanczos_only());
  CHECK(res.eigenvalue == -3.5);
  CHECK(res.eigenvector.amplitudes[0] == 1.0);
}

TEST_CASE("Lanczos agrees with dense diagonalization up to dimension 500") {
  for (const auto& [n, l, pairs] : {std::tuple{1, 8, 3}, {1, 12, 3}, {2, 5, 3}, {3, 4, 3},
                                    {1, 14, 2}, {2, 6, 2}, {3, 6, 2}}) {
    const LatticeGeometry g(static_cast<std::size_t>(n), static_cast<std::size_t>(l));
    const ModelParameters p{60.0, 1.0, 0.9, static_cast<std::size_t>(pairs)};
    const auto h = build_effective(g, p, FullBasis(g, p.pairs));
    REQUIRE(h.dimension() <= 500);
    const auto dense = dense_ground_state(h);
    const auto lz = lanczos_ground_state(h, lanczos_only());
    CHECK(lz.converged);
    CHECK(std::abs(lz.eigenvalue - dense.eigenvalue) < 1e-10);
    double overlap = 0.0;
    for (std::size_t i = 0; i < h.dimension(); ++i) {
      overlap += lz.eigenvector.amplitudes[i] * dense.eigenvector.amplitudes[i];
    }
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
    // the phase convention makes both vectors identical, not just parallel
    CHECK(overlap > 0.0);
    CHECK(lz.residual <= 1e-12 * std::abs(lz.eigenvalue));

    const auto ref = oracle::eigenvalues([&] {
      const auto flat = h.to_dense();
      const auto d = static_cast<Eigen::Index>(h.dimension());
      return Eigen::MatrixXd(Eigen::Map<const Eigen::MatrixXd>(flat.data(), d, d));
    }());
    CHECK(std::abs(dense.eigenvalue - ref(0)) < 1e-10);
  }
}

TEST_CASE("Ritz minimum never increases") {
  const LatticeGeometry g(1, 16);
  const ModelParameters p{50.0, 1.0, 1.0, 3};
  const auto h = build_effective(g, p, FullBasis(g, 3));
  auto opts = lanczos_only();
  opts.krylov_dimension = 12;  // force several restarts
  const auto res = lanczos_ground_state(h, opts);
  REQUIRE(res.ritz_history.size() > 12);
  for (std::size_t i = 1; i < res.ritz_history.size(); ++i) {
    CHECK(res.ritz_history[i] <= res.ritz_history[i - 1] + 1e-12 * std::abs(res.eigenvalue));
  }
  CHECK(res.converged);
  CHECK(std::abs(res.eigenvalue - dense_ground_state(h).eigenvalue) < 1e-10);
}

TEST_CASE("seeded runs are reproducible") {
  const LatticeGeometry g(3, 5);
  const ModelParameters p{80.0, 1.0, 1.0, 2};
  const auto h = build_effective(g, p, build_sector_basis(g, 2));
  auto opts = lanczos_only();
  opts.seed = 7;
  const auto a = lanczos_ground_state(h, opts);
  const auto b = lanczos_ground_state(h, opts);
  CHECK(a.eigenvalue == b.eigenvalue);
  CHECK(a.eigenvector.amplitudes == b.eigenvector.amplitudes);
  opts.seed = 8;
  const auto c = lanczos_ground_state(h, opts);
  CHECK(std::abs(a.eigenvalue - c.eigenvalue) < 1e-10);
}

TEST_CASE("ground state amplitudes of the pair model are positive") {
  const auto g = LatticeGeometry::ring(9);
  const ModelParameters p{100.0, 1.0, 1.0, 2};
  const auto res = ground_state(build_effective(g, p, build_sector_basis(g, 2)), lanczos_only());
  for (const auto a : res.eigenvector.amplitudes) CHECK(a > 0.0);
  CHECK_FALSE(res.near_degenerate);
}

TEST_CASE("degeneracy across a spectrum with a doubled level") {
  // single pair on a 5-ring: E_k depends on cos(2 pi k / 5), so k and L-k pair up
  const auto g = LatticeGeometry::ring(5);
  const ModelParameters p{100.0, 1.0, 1.0, 1};
  auto h = build_effective(g, p, FullBasis(g, 1));
  // flip the sign of the hopping so the lowest level is the doubly degenerate k = 2, 3 pair
  BasisKey key = h.basis();
  SparseBuilder<double> b(key);
  for (std::size_t i = 0; i < h.dimension(); ++i) {
    for (std::size_t j = 0; j < h.dimension(); ++j) {
      const double x = h.element(i, j);
      b.add(j, i == j ? x : -x);
    }
    b.end_row();
  }
  const auto flipped = std::move(b).finish();
  const auto spec = dense_spectrum(flipped);
  REQUIRE(spec.size() == 5);
  CHECK(std::abs(spec[1] - spec[0]) < 1e-13);
  for (const auto& opts : {SolverOptions{}, lanczos_only()}) {
    const auto res = ground_state(flipped, opts);
    CHECK(res.eigenvalue == doctest::Approx(spec[0]));
    CHECK(res.near_degenerate == (std::abs(spec[1] - spec[0]) < 1e-10));
  }
  CHECK_FALSE(ground_state(h, lanczos_only()).near_degenerate);
}

TEST_CASE("complex sector Hamiltonians") {
  const LatticeGeometry g(2, 5);
  const ModelParameters p{30.0, 1.0, 0.5, 2};
  auto full = std::make_shared<const FullBasis>(g, 2);
  auto orbits = std::make_shared<const OrbitTable>(full);
  const SectorBasis sector(orbits, {2, 1});
  const auto h = build_effective_complex(g, p, sector);
  const auto d = dense_ground_state(h);
  const auto l = lanczos_ground_state(h, lanczos_only());
  CHECK(std::abs(d.eigenvalue - l.eigenvalue) < 1e-10);
  std::complex<double> overlap{};
  for (std::size_t i = 0; i < h.dimension(); ++i) {
    overlap += std::conj(d.eigenvector.amplitudes[i]) * l.eigenvector.amplitudes[i];
  }
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-9);
}

TEST_CASE("dense_lowest_states returns an orthonormal set") {
  const auto g = LatticeGeometry::ring(8);
  const ModelParameters p{20.0, 1.0, 1.0, 2};
  const auto h = build_effective(g, p, FullBasis(g, 2));
  const auto states = dense_lowest_states(h, 3);
  REQUIRE(states.size() == 3);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < h.dimension(); ++i) {
        s += states[a].amplitudes[i] * states[b].amplitudes[i];
      }
      CHECK(s == doctest::Approx(a == b ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("non-convergence raises") {
  const auto g = LatticeGeometry::ring(14);
  const ModelParameters p{50.0, 1.0, 1.0, 3};
  const auto h = build_effective(g, p, FullBasis(g, 3));
  auto opts = lanczos_only();
  opts.krylov_dimension = 3;
  opts.max_iterations = 6;
  CHECK_THROWS_AS(ground_state(h, opts), ConvergenceError);
}
