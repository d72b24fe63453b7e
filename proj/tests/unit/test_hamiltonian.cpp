#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

#include "cobed/basis.hpp"
#include "cobed/eigensolver.hpp"
#include "cobed/hamiltonian.hpp"
#include "support/oracles.hpp"

using namespace cobed;

namespace {

Eigen::MatrixXd dense(const SparseHamiltonian<double>& h) {
  const auto d = static_cast<Eigen::Index>(h.dimension());
  const auto flat = h.to_dense();
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      flat.data(), d, d);
}

ModelParameters params(double u0, double jx, double jy, std::size_t n) {
  return {u0, jx, jy, n};
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& h) {
  const auto ev = oracle::eigenvalues(h);
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(params(0.0, 1, 1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(-5.0, 1, 1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(100.0, std::nan(""), 1, 1).validate(), std::invalid_argument);
  CHECK_NOTHROW(params(100.0, 1, 1, 2).validate());
  CHECK(params(100.0, 2, 3, 1).vx() == doctest::Approx(0.04));
  CHECK(params(100.0, 2, 3, 1).vy() == doctest::Approx(0.09));
}

TEST_CASE("effective model on a 3-ring with one pair") {
  const auto g = LatticeGeometry::ring(3);
  const auto p = params(100.0, 1.0, 1.0, 1);
  const double v = p.vx();
  const auto h = dense(build_effective(g, p, FullBasis(g, 1)));
  const auto ev = sorted_eigenvalues(h);
  CHECK(ev[0] == doctest::Approx(-p.u0 - 2 * v).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(-p.u0 - v / 2).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(-p.u0 - v / 2).epsilon(1e-14));
}

TEST_CASE("4-ring, two pairs, k = 0 sector matrix") {
  const auto g = LatticeGeometry::ring(4);
  const auto p = params(50.0, 1.0, 1.0, 2);
  const double v = p.vx();
  const auto h = build_effective(g, p, build_sector_basis(g, 2));
  REQUIRE(h.dimension() == 2);
  const double shift = 2 * (p.u0 + v);
  // the diagonal carries the -2(U0 + V) offset, so compare it in absolute terms
  CHECK(std::abs(h.element(0, 0) - (v - shift)) < 1e-13);
  CHECK(std::abs(h.element(1, 1) + shift) < 1e-13);
  CHECK(h.element(0, 1) / v == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h.element(1, 0) / v == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("fully filled lattice has a single diagonal entry") {
  const LatticeGeometry g(2, 3);
  const auto p = params(10.0, 1.0, 0.5, 6);
  const auto h = build_effective(g, p, FullBasis(g, 6));
  REQUIRE(h.dimension() == 1);
  // every bond occupied: one x and one y bond per site, so only -N U0 survives
  const double expected = -6 * (p.u0 + p.vx() + p.vy()) + 6 * p.vx() + 6 * p.vy();
  CHECK(h.element(0, 0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("effective model matches the bitmask oracle") {
  for (const auto& [n, l, pairs] : {std::tuple{1, 5, 2}, {1, 6, 3}, {1, 2, 1}, {2, 2, 2},
                                    {2, 3, 2}, {3, 3, 2}, {3, 4, 3}, {2, 4, 1}}) {
    const LatticeGeometry g(static_cast<std::size_t>(n), static_cast<std::size_t>(l));
    const auto p = params(40.0, 1.3, 0.7, static_cast<std::size_t>(pairs));
    const auto h = dense(build_effective(g, p, FullBasis(g, p.pairs)));
    const auto ref = oracle::effective_dense(g.rows(), g.cols(), p.pairs, p.u0, p.vx(), p.vy());
    CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("effective model: symmetry and translation invariance") {
  for (const auto& [n, l, pairs] :
       {std::tuple{1, 8, 3}, {1, 10, 4}, {2, 4, 3}, {2, 5, 2}, {3, 3, 4}}) {
    const LatticeGeometry g(static_cast<std::size_t>(n), static_cast<std::size_t>(l));
    const auto p = params(30.0, 1.0, 0.6, static_cast<std::size_t>(pairs));
    const FullBasis basis(g, p.pairs);
    const auto sparse = build_effective(g, p, basis);
    CHECK(sparse.max_asymmetry() < 1e-14);
    const auto h = dense(sparse);
    std::vector<Site> a(p.pairs), b(p.pairs);
    for (const auto& t : translations(g)) {
      double worst = 0.0;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::transform(basis[i].begin(), basis[i].end(), a.begin(), [&](Site s) { return t(s); });
        std::sort(a.begin(), a.end());
        const auto ti = static_cast<Eigen::Index>(basis.rank(a));
        for (std::size_t j = 0; j < basis.size(); ++j) {
          std::transform(basis[j].begin(), basis[j].end(), b.begin(),
                         [&](Site s) { return t(s); });
          std::sort(b.begin(), b.end());
          const auto tj = static_cast<Eigen::Index>(basis.rank(b));
          worst = std::max(worst, std::abs(h(ti, tj) - h(static_cast<Eigen::Index>(i),
                                                        static_cast<Eigen::Index>(j))));
        }
      }
      CHECK(worst == 0.0);
    }
  }
}

TEST_CASE("union of all momentum sectors reproduces the full spectrum") {
  for (const auto& [n, l, pairs] : {std::tuple{1, 6, 2}, {1, 7, 3}, {2, 3, 2}, {3, 4, 2},
                                    {2, 4, 3}, {1, 8, 4}}) {
    const LatticeGeometry g(static_cast<std::size_t>(n), static_cast<std::size_t>(l));
    const auto p = params(25.0, 1.0, 0.8, static_cast<std::size_t>(pairs));
    auto full = std::make_shared<const FullBasis>(g, p.pairs);
    const auto reference = sorted_eigenvalues(dense(build_effective(g, p, *full)));
    const auto orbits = std::make_shared<const OrbitTable>(full);
    std::vector<double> collected;
    for (std::size_t ky = 0; ky < g.rows(); ++ky) {
      for (std::size_t kx = 0; kx < g.cols(); ++kx) {
        const SectorBasis sector(orbits, {kx, ky});
        if (sector.size() == 0) continue;
        const auto h = build_effective_complex(g, p, sector);
        CHECK(h.max_asymmetry() < 1e-14);
        const auto part = dense_spectrum(h);
        collected.insert(collected.end(), part.begin(), part.end());
        if (kx == 0 && ky == 0) {
          const auto real = dense_spectrum(build_effective(g, p, sector));
          for (std::size_t i = 0; i < real.size(); ++i) CHECK(real[i] == doctest::Approx(part[i]));
        }
      }
    }
    std::sort(collected.begin(), collected.end());
    REQUIRE(collected.size() == reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
      CHECK(std::abs(collected[i] - reference[i]) < 1e-11);
    }
  }
}

TEST_CASE("real sector builder rejects nonzero momentum") {
  const auto g = LatticeGeometry::ring(5);
  CHECK_THROWS_AS(build_effective(g, params(10, 1, 1, 2), build_sector_basis(g, 2, {1, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_effective(g, params(10, 1, 1, 3), FullBasis(g, 2)),
                  std::invalid_argument);
}

TEST_CASE("full two-species model") {
  SUBCASE("2-ring, one pair of each species") {
    const auto g = LatticeGeometry::ring(2);
    const auto p = params(100.0, 1.0, 1.0, 1);
    const auto h = dense(build_full(g, p));
    REQUIRE(h.rows() == 4);
    // index = ia * 2 + ib; paired states are (0,0) and (1,1)
    CHECK(h(0, 0) == -p.u0);
    CHECK(h(3, 3) == -p.u0);
    CHECK(h(1, 1) == 0.0);
    CHECK(h(2, 2) == 0.0);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("5-ring, one pair, second-order energy") {
    const auto g = LatticeGeometry::ring(5);
    const auto p = params(100.0, 1.0, 1.0, 1);
    const auto e = ground_state(build_full(g, p)).eigenvalue;
    const double second = -p.u0 - 2 * p.jx * p.jx / p.u0;
    CHECK(std::abs(e - second) < 10 * std::pow(p.jx, 4) / std::pow(p.u0, 3));
  }
  SUBCASE("6-ring, two pairs, within the fourth-order window of the effective energy") {
    const auto g = LatticeGeometry::ring(6);
    const auto p = params(100.0, 1.0, 1.0, 2);
    const auto e_full = ground_state(build_full(g, p)).eigenvalue;
    const auto e_eff = ground_state(build_effective(g, p, build_sector_basis(g, 2))).eigenvalue;
    CHECK(std::abs(e_full - e_eff) < 10 * std::pow(p.jx, 4) / std::pow(p.u0, 3));
  }
  SUBCASE("sign of the tunneling does not matter on even rings") {
    for (const std::size_t l : {4, 6}) {
      for (const std::size_t n : {1, 2}) {
        const auto g = LatticeGeometry::ring(l);
        const auto plus = ground_state(build_full(g, params(20.0, 1.0, 1.0, n))).eigenvalue;
        const auto minus = ground_state(build_full(g, params(20.0, -1.0, 1.0, n))).eigenvalue;
        CHECK(std::abs(plus - minus) < 1e-10);
      }
    }
  }
  SUBCASE("symmetric") {
    const auto h = build_full(LatticeGeometry(2, 3), params(10.0, 1.0, 0.5, 2));
    CHECK(h.max_asymmetry() < 1e-14);
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(build_full(LatticeGeometry::ring(20), params(10, 1, 1, 10), 1000),
                    std::length_error);
  }
}

TEST_CASE("Heisenberg image") {
  SUBCASE("4-ring, two pairs: same spectrum as the effective model") {
    const auto g = LatticeGeometry::ring(4);
    const auto p = params(100.0, 1.0, 1.0, 2);
    const auto a = dense_spectrum(heisenberg_image(g, p));
    const auto b = dense_spectrum(build_effective(g, p, FullBasis(g, 2)));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
  SUBCASE("2-ring, one pair") {
    const auto g = LatticeGeometry::ring(2);
    const auto p = params(100.0, 1.0, 1.0, 1);
    const auto a = dense_spectrum(heisenberg_image(g, p));
    REQUIRE(a.size() == 2);
    CHECK(a[0] == doctest::Approx(-p.u0 - 2 * p.vx()).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(-p.u0).epsilon(1e-14));
  }
  SUBCASE("empty lattice has zero energy") {
    const auto h = heisenberg_image(LatticeGeometry::ring(4), params(100.0, 1.0, 1.0, 0));
    REQUIRE(h.dimension() == 1);
    CHECK(std::abs(h.element(0, 0)) < 1e-15);
  }
  SUBCASE("sublattice sign maps the matrices elementwise") {
    for (const std::size_t l : {4, 6, 8}) {
      for (const std::size_t n : {1, 2, 3}) {
        const auto g = LatticeGeometry::ring(l);
        const auto p = params(100.0, 1.0, 1.0, n);
        const auto spin = dense(heisenberg_image(g, p));
        const auto pair = dense(build_effective(g, p, FullBasis(g, n)));
        const auto states = spin_sector_states(l, n);
        const auto masks = oracle::lex_masks(l, n);
        std::uint64_t even = 0;
        for (std::size_t s = 0; s < l; s += 2) even |= std::uint64_t{1} << s;
        const auto sign = [&](std::uint64_t m) { return std::popcount(m & even) % 2 ? -1.0 : 1.0; };
        const auto spin_index = [&](std::uint64_t m) {
          return static_cast<Eigen::Index>(std::lower_bound(states.begin(), states.end(), m) -
                                           states.begin());
        };
        double worst = 0.0;
        for (std::size_t i = 0; i < masks.size(); ++i) {
          for (std::size_t j = 0; j < masks.size(); ++j) {
            const double mapped = sign(masks[i]) * sign(masks[j]) *
                                  spin(spin_index(masks[i]), spin_index(masks[j]));
            worst = std::max(worst, std::abs(mapped - pair(static_cast<Eigen::Index>(i),
                                                           static_cast<Eigen::Index>(j))));
          }
        }
        CHECK(worst < 1e-12);
      }
    }
  }
  SUBCASE("odd or non-ring geometries are rejected") {
    CHECK_THROWS_AS(heisenberg_image(LatticeGeometry::ring(5), params(10, 1, 1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(heisenberg_image(LatticeGeometry(2, 4), params(10, 1, 1, 2)),
                    std::invalid_argument);
  }
}
