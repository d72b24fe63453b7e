#include "cobed/state.hpp"

#include <sstream>

namespace cobed {

std::string BasisKey::describe() const {
  std::ostringstream os;
  switch (kind) {
    case BasisKind::pair_configurations: os << "pairs"; break;
    case BasisKind::momentum_sector: os << "sector"; break;
    case BasisKind::two_species_fermions: os << "fermions"; break;
    case BasisKind::spin_sector: os << "spins"; break;
  }
  os << "[" << rows << "x" << cols << ", N=" << pairs;
  if (kind == BasisKind::momentum_sector) os << ", k=(" << kx << "," << ky << ")";
  os << ", dim=" << dimension << "]";
  return os.str();
}

BasisMismatch::BasisMismatch(const BasisKey& expected, const BasisKey& got)
    : std::invalid_argument("basis mismatch: expected " + expected.describe() +
                            ", got " + got.describe()) {}

}  // namespace cobed
