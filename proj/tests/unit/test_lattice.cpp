#include <doctest.h>

#include <algorithm>
#include <set>

#include "cobed/lattice.hpp"

using namespace cobed;

TEST_CASE("site_index wraps and round-trips") {
  const auto ring = LatticeGeometry::ring(5);
  CHECK(ring.site(0, 0) == 0);
  CHECK(ring.site(0, 7) == 2);
  CHECK(ring.site(0, -1) == 4);

  const LatticeGeometry torus(4, 18);
  const Site s = torus.site(3, 2);
  CHECK(s == 3 * 18 + 2);
  CHECK(torus.position(s) == std::pair<std::size_t, std::size_t>{3, 2});
  CHECK(torus.site(3 + 4, 2 + 18) == s);
  CHECK(torus.site(3 - 8, 2 - 36) == s);

  std::set<Site> seen;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 18; ++c) {
      const Site t = torus.site(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c));
      CHECK(t < torus.site_count());
      seen.insert(t);
      const auto [rr, cc] = torus.position(t);
      CHECK(rr == r);
      CHECK(cc == c);
    }
  }
  CHECK(seen.size() == torus.site_count());
}

TEST_CASE("zero extents are rejected") {
  CHECK_THROWS_AS(LatticeGeometry(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(LatticeGeometry(3, 0), std::invalid_argument);
}

TEST_CASE("bonds per direction") {
  const auto ring = LatticeGeometry::ring(4);
  CHECK(bonds(ring, Direction::x) == std::vector<Bond>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(bonds(ring, Direction::y).empty());

  SUBCASE("extent 2 lists every vertical pair twice") {
    const LatticeGeometry g(2, 3);
    const auto ys = bonds(g, Direction::y);
    CHECK(ys.size() == 6);
    std::multiset<std::pair<Site, Site>> undirected;
    for (const auto& [a, b] : ys) undirected.insert({std::min(a, b), std::max(a, b)});
    for (Site c = 0; c < 3; ++c) CHECK(undirected.count({c, c + 3}) == 2);
    CHECK(g.has_doubled_bonds());
    CHECK_FALSE(LatticeGeometry(3, 3).has_doubled_bonds());
  }
}

TEST_CASE("translation group") {
  SUBCASE("ring of three: cyclic shifts") {
    const auto ts = translations(LatticeGeometry::ring(3));
    REQUIRE(ts.size() == 3);
    CHECK(ts[0].image == std::vector<Site>{0, 1, 2});
    CHECK(ts[1].image == std::vector<Site>{1, 2, 0});
    CHECK(ts[2].image == std::vector<Site>{2, 0, 1});
  }
  SUBCASE("2x2 torus: Z2 x Z2") {
    const LatticeGeometry g(2, 2);
    const auto ts = translations(g);
    REQUIRE(ts.size() == 4);
    for (const auto& t : ts) CHECK(compose(t, t, g).image == ts[0].image);
  }
  SUBCASE("shift by one composed L times is the identity") {
    const auto ring = LatticeGeometry::ring(7);
    const auto ts = translations(ring);
    Translation acc = ts[0];
    for (int i = 0; i < 7; ++i) acc = compose(ts[1], acc, ring);
    CHECK(acc.image == ts[0].image);
  }
}

TEST_CASE("translations are commuting permutations and close under composition") {
  for (const auto& [n, l] : {std::pair{1, 6}, {2, 3}, {3, 4}, {4, 5}, {5, 20}, {10, 10}}) {
    const LatticeGeometry g(static_cast<std::size_t>(n), static_cast<std::size_t>(l));
    const auto ts = translations(g);
    REQUIRE(ts.size() == g.site_count());
    CHECK(ts[0].shift_x == 0);
    CHECK(ts[0].shift_y == 0);
    for (const auto& t : ts) {
      auto sorted = t.image;
      std::sort(sorted.begin(), sorted.end());
      for (Site s = 0; s < g.site_count(); ++s) CHECK(sorted[s] == s);
    }
    if (g.site_count() > 30) continue;
    for (const auto& a : ts) {
      for (const auto& b : ts) {
        const auto ab = compose(a, b, g);
        CHECK(ab.image == compose(b, a, g).image);
        const auto idx = ab.shift_y * g.cols() + ab.shift_x;
        CHECK(ts[idx].image == ab.image);
      }
    }
  }
}

TEST_CASE("bond lists are translation covariant") {
  for (const auto& [n, l] : {std::pair{1, 5}, {2, 4}, {3, 3}, {4, 6}}) {
    const LatticeGeometry g(static_cast<std::size_t>(n), static_cast<std::size_t>(l));
    for (const auto dir : {Direction::x, Direction::y}) {
      auto reference = bonds(g, dir);
      std::sort(reference.begin(), reference.end());
      for (const auto& t : translations(g)) {
        auto moved = bonds(g, dir);
        for (auto& [a, b] : moved) {
          a = t(a);
          b = t(b);
        }
        std::sort(moved.begin(), moved.end());
        CHECK(moved == reference);
      }
    }
  }
}

TEST_CASE("momentum angles") {
  const LatticeGeometry g(3, 4);
  CHECK(momentum_angle(g, {0, 0}, 2, 1) == 0.0);
  CHECK(momentum_angle(g, {1, 0}, 1, 0) == doctest::Approx(2 * 3.141592653589793 / 4));
  CHECK(momentum_angle(g, {0, 1}, 0, 1) == doctest::Approx(2 * 3.141592653589793 / 3));
  CHECK(momentum_angle(g, {2, 0}, 2, 0) == 0.0);
}
