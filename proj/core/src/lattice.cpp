#include "cobed/lattice.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cobed {

namespace {

std::int64_t wrap(std::int64_t v, std::size_t extent) {
  const auto e = static_cast<std::int64_t>(extent);
  const auto r = v % e;
  return r < 0 ? r + e : r;
}

}  // namespace

LatticeGeometry::LatticeGeometry(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("lattice extents must be positive");
  }
  if (rows * cols > std::size_t{1} << 31) {
    throw std::length_error("lattice has too many sites");
  }
}

Site LatticeGeometry::site(std::int64_t row, std::int64_t col) const noexcept {
  return static_cast<Site>(wrap(row, rows_) * static_cast<std::int64_t>(cols_) +
                           wrap(col, cols_));
}

Site LatticeGeometry::shift(Site s, Direction d, std::int64_t steps) const noexcept {
  const auto [r, c] = position(s);
  const auto row = static_cast<std::int64_t>(r);
  const auto col = static_cast<std::int64_t>(c);
  return d == Direction::x ? site(row, col + steps) : site(row + steps, col);
}

std::string LatticeGeometry::describe() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_;
  return os.str();
}

std::vector<Bond> bonds(const LatticeGeometry& geom, Direction d) {
  std::vector<Bond> out;
  if (geom.extent(d) < 2) {
    return out;
  }
  out.reserve(geom.site_count());
  for (Site j = 0; j < geom.site_count(); ++j) {
    out.emplace_back(j, geom.shift(j, d));
  }
  return out;
}

std::vector<Translation> translations(const LatticeGeometry& geom) {
  std::vector<Translation> out;
  out.reserve(geom.site_count());
  for (std::size_t ty = 0; ty < geom.rows(); ++ty) {
    for (std::size_t tx = 0; tx < geom.cols(); ++tx) {
      Translation t{tx, ty, std::vector<Site>(geom.site_count())};
      for (Site s = 0; s < geom.site_count(); ++s) {
        const auto [r, c] = geom.position(s);
        t.image[s] = geom.site(static_cast<std::int64_t>(r + ty),
                               static_cast<std::int64_t>(c + tx));
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

double momentum_angle(const LatticeGeometry& geom, const Momentum& k,
                      std::size_t shift_x, std::size_t shift_y) {
  // Reduce the integer products first so the angle stays in [0, 4*pi).
  const double fx = static_cast<double>((k.kx * shift_x) % geom.cols()) /
                    static_cast<double>(geom.cols());
  const double fy = static_cast<double>((k.ky * shift_y) % geom.rows()) /
                    static_cast<double>(geom.rows());
  return 2.0 * std::numbers::pi * (fx + fy);
}

Translation compose(const Translation& a, const Translation& b,
                    const LatticeGeometry& geom) {
  Translation t{(a.shift_x + b.shift_x) % geom.cols(),
                (a.shift_y + b.shift_y) % geom.rows(),
                std::vector<Site>(b.image.size())};
  for (std::size_t s = 0; s < b.image.size(); ++s) {
    t.image[s] = a.image[b.image[s]];
  }
  return t;
}

}  // namespace cobed
