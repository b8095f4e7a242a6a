#include "boussinesq/grid.hpp"

#include <cmath>
#include <string>

#include "boussinesq/errors.hpp"

namespace boussinesq {

int Grid::checked_n(int n) {
  if (n < 16 || n % 2 != 0) {
    throw ParameterError("grid size must be even and >= 16, got " + std::to_string(n));
  }
  return n;
}

Grid::Grid(int n, double length) : n_(checked_n(n)), length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ParameterError("box length must be positive and finite");
  }
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> k(static_cast<std::size_t>(n_));
  for (int row = 0; row < n_; ++row) k[static_cast<std::size_t>(row)] = ky(row);
  return k;
}

Grid make_grid(int n, double length) { return Grid(n, length); }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) {
    throw GridMismatchError(std::string(what) + ": fields live on different grids");
  }
}

}  // namespace boussinesq
