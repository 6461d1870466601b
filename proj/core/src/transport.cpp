#include "ibex/transport.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ibex/errors.hpp"
#include "ibex/hermite.hpp"
#include "ibex/macrostate.hpp"
#include "ibex/parallel.hpp"
#include "ibex/projection.hpp"

namespace ibex {

Eigen::VectorXd flux_vector(const Eigen::VectorXd& coeffs, const ExpansionCenter& center,
                            int axis, const IndexSet& set) {
  if (coeffs.size() != set.size()) throw StateError("flux_vector: coefficient length mismatch");
  const double sqrt_t = std::sqrt(center.t_bar);
  const double u_d = center.u_bar[axis];
  Eigen::VectorXd flux(set.size());
  for (int r = 0; r < set.size(); ++r) {
    double value = u_d * coeffs[r];
    const int up = set.rank_raised(r, axis);
    if (up >= 0) value += (set[r][axis] + 1) * sqrt_t * coeffs[up];
    const int down = set.rank_lowered(r, axis);
    if (down >= 0) value += sqrt_t * coeffs[down];
    flux[r] = value;
  }
  return flux;
}

namespace {

constexpr double kWenoEps = 1e-6;
constexpr double kGammaUpwind = 1.0 / 3.0;
constexpr double kGammaCentral = 2.0 / 3.0;

double weno_combine(double candidate_upwind, double candidate_central, double beta_upwind,
                    double beta_central) {
  const double du = kWenoEps + beta_upwind;
  const double dc = kWenoEps + beta_central;
  const double w_upwind = kGammaUpwind / (du * du);
  const double w_central = kGammaCentral / (dc * dc);
  return (w_upwind * candidate_upwind + w_central * candidate_central) / (w_upwind + w_central);
}

}  // namespace

double weno_left_value(double fm1, double f0, double fp1) {
  const double d_lo = f0 - fm1;
  const double d_hi = fp1 - f0;
  return weno_combine(1.5 * f0 - 0.5 * fm1, 0.5 * (f0 + fp1), d_lo * d_lo, d_hi * d_hi);
}

double weno_right_value(double fm1, double f0, double fp1) {
  const double d_lo = f0 - fm1;
  const double d_hi = fp1 - f0;
  return weno_combine(1.5 * f0 - 0.5 * fp1, 0.5 * (f0 + fm1), d_hi * d_hi, d_lo * d_lo);
}

void weno_reconstruct(const Eigen::Ref<const Eigen::VectorXd>& fm1,
                      const Eigen::Ref<const Eigen::VectorXd>& f0,
                      const Eigen::Ref<const Eigen::VectorXd>& fp1,
                      Eigen::VectorXd& left_face, Eigen::VectorXd& right_face) {
  const Eigen::Index n = f0.size();
  left_face.resize(n);
  right_face.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    left_face[r] = weno_left_value(fm1[r], f0[r], fp1[r]);
    right_face[r] = weno_right_value(fm1[r], f0[r], fp1[r]);
  }
}

SignalSpeeds signal_speeds(const ExpansionCenter& center, int m, int axis) {
  const double spread = largest_hermite_root(m + 1) * std::sqrt(center.t_bar);
  return {center.u_bar[axis] - spread, center.u_bar[axis] + spread};
}

Eigen::VectorXd hll_flux(const Eigen::VectorXd& f_left, const Eigen::VectorXd& f_right,
                         const ExpansionCenter& center, int m, int axis, const IndexSet& set) {
  const SignalSpeeds s = signal_speeds(center, m, axis);
  if (s.lambda_l >= 0.0) return flux_vector(f_left, center, axis, set);
  if (s.lambda_r <= 0.0) return flux_vector(f_right, center, axis, set);
  const Eigen::VectorXd flux_l = flux_vector(f_left, center, axis, set);
  const Eigen::VectorXd flux_r = flux_vector(f_right, center, axis, set);
  return (s.lambda_r * flux_l - s.lambda_l * flux_r +
          s.lambda_l * s.lambda_r * (f_right - f_left)) /
         (s.lambda_r - s.lambda_l);
}

double cfl_dt(const GridGeometry& geometry, const ExpansionCenter& center, int m, double cfl) {
  if (cfl <= 0.0 || cfl >= 1.0) throw ConfigError("cfl_dt: CFL number must lie in (0,1)");
  const double spread = largest_hermite_root(m + 1) * std::sqrt(center.t_bar);
  double dt = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < geometry.dims; ++axis) {
    const double speed = std::abs(center.u_bar[axis]) + spread;
    dt = std::min(dt, geometry.dx(axis) / speed);
  }
  return cfl * dt;
}

double half_flux_positive(double u, double theta) {
  if (theta <= 0.0) throw StateError("half_flux_positive: temperature must be > 0");
  return std::sqrt(theta / (2.0 * std::numbers::pi)) * std::exp(-u * u / (2.0 * theta)) +
         0.5 * u * (1.0 + std::erf(u / std::sqrt(2.0 * theta)));
}

double half_flux_negative(double u, double theta) { return half_flux_positive(u, theta) - u; }

namespace {

/// Ghost coefficients for one diffusive wall, given the adjacent interior
/// cell. `side` 0 means the wall sits at the low end of `axis` (outgoing
/// particles move toward -axis), 1 the high end.
Eigen::VectorXd wall_ghost(const Eigen::Ref<const Eigen::VectorXd>& interior_coeffs,
                           const GridField& grid, const WallSpec& wall, int axis, int side,
                           const IndexSet& set) {
  SpectralState interior;
  interior.coeffs = interior_coeffs;
  interior.center = grid.center();
  interior.max_degree = grid.max_degree();
  const MacroState macro = macro_from_state(interior, set);
  if (macro.theta <= 0.0)
    throw StateError("diffusive wall: interior temperature is not positive");

  const double u_in = macro.u[axis];
  const double u_wall = wall.velocity[axis];
  double outgoing, inflow_per_density;
  if (side == 0) {
    outgoing = macro.rho * half_flux_negative(u_in, macro.theta);
    inflow_per_density = half_flux_positive(u_wall, wall.theta);
  } else {
    outgoing = macro.rho * half_flux_positive(u_in, macro.theta);
    inflow_per_density = half_flux_negative(u_wall, wall.theta);
  }
  const double rho_ghost = outgoing / inflow_per_density;

  SpectralState ghost = SpectralState::maxwellian(rho_ghost, {wall.velocity, wall.theta},
                                                 grid.max_degree());
  return project(ghost, grid.center(), set).coeffs;
}

void fill_axis(GridField& grid, const BoundarySpec& spec, const IndexSet& set, int axis,
               int cross_lo, int cross_hi) {
  const int n = grid.geometry().cells[static_cast<std::size_t>(axis)];
  const auto at = [&](int along, int cross) -> Eigen::Ref<Eigen::VectorXd> {
    return axis == 0 ? grid.cell(along, cross) : grid.cell(cross, along);
  };
  for (int cross = cross_lo; cross < cross_hi; ++cross) {
    for (int side = 0; side < 2; ++side) {
      const BoundaryKind kind = spec.kind[static_cast<std::size_t>(axis)][static_cast<std::size_t>(side)];
      if (kind == BoundaryKind::periodic) {
        for (int g = 1; g <= GridField::kGhost; ++g) {
          if (side == 0)
            at(-g, cross) = at(n - g, cross);
          else
            at(n - 1 + g, cross) = at(g - 1, cross);
        }
      } else {
        const WallSpec& wall = spec.wall[static_cast<std::size_t>(axis)][static_cast<std::size_t>(side)];
        const int interior = side == 0 ? 0 : n - 1;
        const Eigen::VectorXd ghost = wall_ghost(at(interior, cross), grid, wall, axis, side, set);
        for (int g = 1; g <= GridField::kGhost; ++g)
          at(side == 0 ? -g : n - 1 + g, cross) = ghost;
      }
    }
  }
}

}  // namespace

void apply_boundaries(GridField& grid, const BoundarySpec& spec, const IndexSet& set) {
  const GridGeometry& geometry = grid.geometry();
  spec.validate(geometry.dims);
  if (geometry.dims == 1) {
    fill_axis(grid, spec, set, 0, 0, 1);
    return;
  }
  // Axis-0 ghosts over interior rows first; the axis-1 pass then covers the
  // full extended row range so corner ghosts are well defined.
  fill_axis(grid, spec, set, 0, 0, geometry.cells[1]);
  fill_axis(grid, spec, set, 1, -GridField::kGhost, geometry.cells[0] + GridField::kGhost);
}

void convection_step(GridField& grid, const BoundarySpec& spec, double dt, const IndexSet& set,
                     int threads) {
  const GridGeometry& geometry = grid.geometry();
  const ExpansionCenter& center = grid.center();
  const int m = grid.max_degree();
  if (set.max_degree() != m || set.size() != grid.n_coeffs())
    throw ConfigError("convection_step: grid and index set disagree");
  if (dt <= 0.0) throw TimeStepError("convection_step: dt must be > 0");
  const double spread = largest_hermite_root(m + 1) * std::sqrt(center.t_bar);
  for (int axis = 0; axis < geometry.dims; ++axis) {
    const double speed = std::abs(center.u_bar[axis]) + spread;
    if (dt * speed / geometry.dx(axis) >= 1.0)
      throw TimeStepError("convection_step: dt violates the CFL bound on axis " +
                          std::to_string(axis));
  }

  apply_boundaries(grid, spec, set);

  const int n = grid.n_coeffs();
  const int nx = geometry.cells[0];
  const int ny = geometry.dims == 2 ? geometry.cells[1] : 1;
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(n, static_cast<std::int64_t>(nx) * ny);
  const auto delta_col = [&](int i, int j) -> Eigen::Ref<Eigen::VectorXd> {
    return delta.col(i + static_cast<std::int64_t>(nx) * j);
  };

  for (int axis = 0; axis < geometry.dims; ++axis) {
    const int len = axis == 0 ? nx : ny;
    const int rows = axis == 0 ? ny : nx;
    const double scale = dt / geometry.dx(axis);
    parallel_for(
        static_cast<std::size_t>(rows),
        [&](std::size_t row_index) {
          const int cross = static_cast<int>(row_index);
          const auto at = [&](int along) -> Eigen::Ref<const Eigen::VectorXd> {
            return axis == 0 ? grid.cell(along, cross) : grid.cell(cross, along);
          };
          Eigen::VectorXd f_left(n), f_right(n);
          Eigen::MatrixXd fluxes(n, len + 1);
          for (int face = 0; face <= len; ++face) {
            const auto lm1 = at(face - 2);
            const auto l0 = at(face - 1);
            const auto lp1 = at(face);
            const auto rp1 = at(face + 1);
            for (int r = 0; r < n; ++r) {
              f_left[r] = weno_left_value(lm1[r], l0[r], lp1[r]);
              f_right[r] = weno_right_value(l0[r], lp1[r], rp1[r]);
            }
            fluxes.col(face) = hll_flux(f_left, f_right, center, m, axis, set);
          }
          for (int c = 0; c < len; ++c) {
            const Eigen::VectorXd diff = scale * (fluxes.col(c + 1) - fluxes.col(c));
            if (axis == 0)
              delta_col(c, cross) -= diff;
            else
              delta_col(cross, c) -= diff;
          }
        },
        threads);
  }

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) grid.cell(i, j) += delta_col(i, j);
}

}  // namespace ibex
