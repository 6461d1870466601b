#pragma once

#include <Eigen/Core>
#include <array>

#include "ibex/multi_index.hpp"
#include "ibex/spectral_state.hpp"

namespace ibex {

/// Uniform cell-centered grid over [0,lx] (1D) or [0,lx]x[0,ly] (2D).
struct GridGeometry {
  int dims = 1;                          // number of active spatial axes (1 or 2)
  std::array<int, 2> cells{1, 1};        // cell counts per active axis
  std::array<double, 2> length{1.0, 1.0};

  double dx(int axis) const { return length[static_cast<std::size_t>(axis)] / cells[static_cast<std::size_t>(axis)]; }
  bool valid() const {
    if (dims != 1 && dims != 2) return false;
    for (int a = 0; a < dims; ++a)
      if (cells[static_cast<std::size_t>(a)] < 1 || length[static_cast<std::size_t>(a)] <= 0.0) return false;
    return true;
  }
};

enum class BoundaryKind { periodic, diffusive_wall };

/// Velocity and temperature of a diffusive wall (nondimensional).
struct WallSpec {
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double theta = 1.0;
};

/// Boundary condition per (axis, side); side 0 is the low end, side 1 the
/// high end. Periodic sides must be paired with the opposite side.
struct BoundarySpec {
  std::array<std::array<BoundaryKind, 2>, 2> kind{
      {{BoundaryKind::periodic, BoundaryKind::periodic},
       {BoundaryKind::periodic, BoundaryKind::periodic}}};
  std::array<std::array<WallSpec, 2>, 2> wall{};

  /// Throws ConfigError if a periodic side is paired with a wall on the
  /// opposite side of the same axis.
  void validate(int dims) const;
};

/// Coefficient field over a grid: every cell stores one coefficient vector,
/// and all cells share a single expansion center during transport. Two ghost
/// layers surround the interior along each active axis.
class GridField {
 public:
  static constexpr int kGhost = 2;

  GridField(const GridGeometry& geometry, const ExpansionCenter& center, int max_degree);

  const GridGeometry& geometry() const { return geometry_; }
  const ExpansionCenter& center() const { return center_; }
  int max_degree() const { return max_degree_; }
  int n_coeffs() const { return static_cast<int>(data_.rows()); }

  /// Cell access; i in [-kGhost, nx+kGhost). For 2D fields j likewise,
  /// for 1D fields j must be 0.
  Eigen::Ref<Eigen::VectorXd> cell(int i, int j = 0) { return data_.col(column(i, j)); }
  Eigen::Ref<const Eigen::VectorXd> cell(int i, int j = 0) const { return data_.col(column(i, j)); }

  /// Number of interior cells.
  int interior_count() const;
  /// Interior cell (i, j) for a flat index in [0, interior_count()).
  std::array<int, 2> interior_cell(int flat) const;

  /// Sum of one coefficient over the interior, times the cell volume.
  double integrated_coefficient(int rank) const;

  bool all_finite() const;

 private:
  int column(int i, int j) const;

  GridGeometry geometry_;
  ExpansionCenter center_;
  int max_degree_;
  Eigen::MatrixXd data_;  // n_coeffs x storage cells (interior + ghosts)
};

}  // namespace ibex
