#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cobed {

using Site = std::uint32_t;

// x runs along the columns (extent L), y along the rows (extent n).
enum class Direction { x, y };

/// Rectangular n x L lattice with periodic boundaries in both directions.
///
/// Sites are numbered row-major, the column index running fastest:
/// site(r, c) = r * L + c. A ring of L sites is the 1 x L torus.
class LatticeGeometry {
 public:
  LatticeGeometry(std::size_t rows, std::size_t cols);

  static LatticeGeometry ring(std::size_t length) { return {1, length}; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t site_count() const noexcept { return rows_ * cols_; }
  std::size_t extent(Direction d) const noexcept {
    return d == Direction::x ? cols_ : rows_;
  }
  bool is_ring() const noexcept { return rows_ == 1; }

  /// Any direction of extent exactly 2 lists each of its physical bonds twice.
  bool has_doubled_bonds() const noexcept { return rows_ == 2 || cols_ == 2; }

  /// Wraps both coordinates onto the torus.
  Site site(std::int64_t row, std::int64_t col) const noexcept;
  /// (row, col) of a site.
  std::pair<std::size_t, std::size_t> position(Site s) const noexcept {
    return {s / cols_, s % cols_};
  }
  Site shift(Site s, Direction d, std::int64_t steps = 1) const noexcept;

  std::string describe() const;

  friend bool operator==(const LatticeGeometry&, const LatticeGeometry&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
};

using Bond = std::pair<Site, Site>;

/// (j, shift(j)) for every site j, or nothing if the direction has extent 1.
std::vector<Bond> bonds(const LatticeGeometry& geom, Direction d);

/// Translation by (shift_x, shift_y) lattice spacings, stored as a site permutation.
struct Translation {
  std::size_t shift_x = 0;
  std::size_t shift_y = 0;
  std::vector<Site> image;

  Site operator()(Site s) const { return image[s]; }
};

/// Crystal momentum (k_x, k_y) with k_x in [0, L) and k_y in [0, n).
struct Momentum {
  std::size_t kx = 0;
  std::size_t ky = 0;

  bool is_zero() const noexcept { return kx == 0 && ky == 0; }
  friend bool operator==(const Momentum&, const Momentum&) = default;
};

/// All n*L translations, ordered by index shift_y * L + shift_x; index 0 is the identity.
std::vector<Translation> translations(const LatticeGeometry& geom);

/// Phase angle 2*pi*(k_x t_x / L + k_y t_y / n) carried by a translation.
double momentum_angle(const LatticeGeometry& geom, const Momentum& k,
                      std::size_t shift_x, std::size_t shift_y);

/// Composition a after b.
Translation compose(const Translation& a, const Translation& b,
                    const LatticeGeometry& geom);

}  // namespace cobed
