#include "ibex/grid.hpp"

#include <cmath>

#include "ibex/errors.hpp"

namespace ibex {

void BoundarySpec::validate(int dims) const {
  for (int a = 0; a < dims; ++a) {
    const bool low_periodic = kind[static_cast<std::size_t>(a)][0] == BoundaryKind::periodic;
    const bool high_periodic = kind[static_cast<std::size_t>(a)][1] == BoundaryKind::periodic;
    if (low_periodic != high_periodic)
      throw ConfigError("boundary: periodic sides must be paired on axis " + std::to_string(a));
    for (int s = 0; s < 2; ++s)
      if (kind[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)] == BoundaryKind::diffusive_wall &&
          wall[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)].theta <= 0.0)
        throw ConfigError("boundary: wall temperature must be > 0");
  }
}

GridField::GridField(const GridGeometry& geometry, const ExpansionCenter& center, int max_degree)
    : geometry_(geometry), center_(center), max_degree_(max_degree) {
  if (!geometry.valid()) throw ConfigError("grid: invalid geometry");
  if (center.t_bar <= 0.0) throw ConfigError("grid: expansion temperature must be > 0");
  if (max_degree < 0) throw ConfigError("grid: negative expansion order");
  const int cols_x = geometry_.cells[0] + 2 * kGhost;
  const int cols_y = geometry_.dims == 2 ? geometry_.cells[1] + 2 * kGhost : 1;
  data_ = Eigen::MatrixXd::Zero(basis_count(max_degree), static_cast<std::int64_t>(cols_x) * cols_y);
}

int GridField::column(int i, int j) const {
  const int nx = geometry_.cells[0];
  if (i < -kGhost || i >= nx + kGhost) throw StateError("grid: cell index out of range");
  if (geometry_.dims == 1) {
    if (j != 0) throw StateError("grid: second index must be 0 on a 1D grid");
    return i + kGhost;
  }
  const int ny = geometry_.cells[1];
  if (j < -kGhost || j >= ny + kGhost) throw StateError("grid: cell index out of range");
  return (i + kGhost) + (nx + 2 * kGhost) * (j + kGhost);
}

int GridField::interior_count() const {
  return geometry_.cells[0] * (geometry_.dims == 2 ? geometry_.cells[1] : 1);
}

std::array<int, 2> GridField::interior_cell(int flat) const {
  const int nx = geometry_.cells[0];
  return {flat % nx, flat / nx};
}

double GridField::integrated_coefficient(int rank) const {
  double volume = geometry_.dx(0);
  if (geometry_.dims == 2) volume *= geometry_.dx(1);
  double sum = 0.0;
  const int ny = geometry_.dims == 2 ? geometry_.cells[1] : 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < geometry_.cells[0]; ++i) sum += cell(i, j)[rank];
  return sum * volume;
}

bool GridField::all_finite() const {
  const int ny = geometry_.dims == 2 ? geometry_.cells[1] : 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < geometry_.cells[0]; ++i)
      if (!cell(i, j).allFinite()) return false;
  return true;
}

}  // namespace ibex
