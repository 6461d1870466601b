#include <doctest.h>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <vector>

#include "ibex/errors.hpp"
#include "ibex/grid.hpp"
#include "ibex/hermite.hpp"
#include "ibex/multi_index.hpp"
#include "ibex/quadrature.hpp"
#include "ibex/spectral_state.hpp"
#include "ibex/transport.hpp"

using ibex::BoundaryKind;
using ibex::BoundarySpec;
using ibex::ExpansionCenter;
using ibex::GridField;
using ibex::GridGeometry;
using ibex::IndexSet;
using ibex::MultiIndex;

namespace {

Eigen::VectorXd random_coeffs(const IndexSet& set, unsigned seed, double scale = 0.1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::VectorXd f(set.size());
  f[0] = 1.0;
  for (int r = 1; r < set.size(); ++r) f[r] = dist(rng);
  return f;
}

Eigen::MatrixXd flux_jacobian(const ExpansionCenter& center, int axis, const IndexSet& set) {
  Eigen::MatrixXd jac(set.size(), set.size());
  for (int col = 0; col < set.size(); ++col) {
    Eigen::VectorXd basis = Eigen::VectorXd::Zero(set.size());
    basis[col] = 1.0;
    jac.col(col) = ibex::flux_vector(basis, center, axis, set);
  }
  return jac;
}

}  // namespace

TEST_CASE("flux vector equals the quadrature moment of v_d times the state") {
  const IndexSet set(3);
  const ExpansionCenter center{{0.4, -0.2, 0.1}, 1.3};
  const Eigen::VectorXd coeffs = random_coeffs(set, 31u);
  ibex::SpectralState state{coeffs, center, 3};

  const ibex::Quadrature1D q = ibex::gauss_hermite(10);
  const double root_t = std::sqrt(center.t_bar);
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::VectorXd flux = ibex::flux_vector(coeffs, center, axis, set);
    for (int a = 0; a < set.size(); ++a) {
      // F_a = (1/a!) int v_axis f(v) He_a((v-u)/sqrt(T)) dv, integrated
      // exactly with tensorized Gauss-Hermite nodes.
      double moment = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i)
        for (std::size_t j = 0; j < q.nodes.size(); ++j)
          for (std::size_t k = 0; k < q.nodes.size(); ++k) {
            const Eigen::Vector3d v =
                center.u_bar + root_t * Eigen::Vector3d(q.nodes[i], q.nodes[j], q.nodes[k]);
            const double w = q.weights[i] * q.weights[j] * q.weights[k];
            const double f_over_weight =
                ibex::reconstruct(state, set, v) / ibex::gaussian_weight(center, v);
            moment += w * v[axis] * f_over_weight * ibex::basis_eval(set[a], center, v);
          }
      moment /= ibex::factorial(set[a]);
      CHECK(std::abs(flux[a] - moment) <= 1e-12 * std::max(1.0, std::abs(moment)));
    }
  }
}

TEST_CASE("flux jacobian is hyperbolic with speeds inside the hermite-root bound") {
  for (const int m : {2, 4, 6}) {
    const IndexSet set(m);
    const ExpansionCenter center{{0.3, 0.0, -0.2}, 1.5};
    const double radius = ibex::largest_hermite_root(m + 1) * std::sqrt(center.t_bar);
    for (int axis = 0; axis < 3; ++axis) {
      const Eigen::MatrixXd jac = flux_jacobian(center, axis, set);
      const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(jac, false).eigenvalues();
      for (int i = 0; i < eig.size(); ++i) {
        CHECK(std::abs(eig[i].imag()) <= 1e-8);
        CHECK(std::abs(eig[i].real() - center.u_bar[axis]) <= radius + 1e-8);
      }
    }
  }
}

TEST_CASE("signal speeds straddle the center velocity") {
  const ExpansionCenter center{{0.7, -0.3, 0.0}, 2.0};
  for (int m : {2, 4, 10}) {
    for (int axis = 0; axis < 3; ++axis) {
      const auto speeds = ibex::signal_speeds(center, m, axis);
      const double c = ibex::largest_hermite_root(m + 1) * std::sqrt(center.t_bar);
      CHECK(speeds.lambda_l == doctest::Approx(center.u_bar[axis] - c).epsilon(1e-14));
      CHECK(speeds.lambda_r == doctest::Approx(center.u_bar[axis] + c).epsilon(1e-14));
    }
  }
}

TEST_CASE("weno face values reproduce the pinned check data") {
  CHECK(ibex::weno_left_value(1.0, 2.0, 3.0) == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(std::abs(ibex::weno_right_value(0.0, 0.0, 1.0)) <= 1e-5);
  // On smooth (linear) data both candidate stencils agree, so any weights
  // reproduce the interface value exactly.
  CHECK(ibex::weno_right_value(1.0, 2.0, 3.0) == doctest::Approx(1.5).epsilon(1e-9));

  const IndexSet set(1);
  Eigen::VectorXd a(4), b(4), c(4), left(4), right(4);
  a << 1, 0, 2, -1;
  b << 2, 0, 3, -2;
  c << 3, 0, 4, -3;
  ibex::weno_reconstruct(a, b, c, left, right);
  for (int i = 0; i < 4; ++i) {
    CHECK(left[i] == ibex::weno_left_value(a[i], b[i], c[i]));
    CHECK(right[i] == ibex::weno_right_value(a[i], b[i], c[i]));
  }
}

TEST_CASE("weno reconstruction is second-order accurate on smooth data") {
  // Face value from cell averages of sin(x) on successively refined grids.
  double errors[2];
  for (int level = 0; level < 2; ++level) {
    const int cells = 40 << level;
    const double h = 1.0 / cells;
    double worst = 0.0;
    for (int j = 1; j + 1 < cells; ++j) {
      auto avg = [&](int cell) {
        const double x0 = cell * h, x1 = x0 + h;
        return (std::cos(x0) - std::cos(x1)) / h;  // mean of sin over the cell
      };
      const double face = ibex::weno_left_value(avg(j - 1), avg(j), avg(j + 1));
      worst = std::max(worst, std::abs(face - std::sin((j + 1) * h)));
    }
    errors[level] = worst;
  }
  const double order = std::log2(errors[0] / errors[1]);
  CHECK(order >= 1.9);
}

TEST_CASE("hll flux is consistent: equal states return the physical flux") {
  const IndexSet set(3);
  const ExpansionCenter center{{0.2, 0.1, 0.0}, 1.1};
  const Eigen::VectorXd f = random_coeffs(set, 77u);
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::VectorXd numerical = ibex::hll_flux(f, f, center, 3, axis, set);
    const Eigen::VectorXd physical = ibex::flux_vector(f, center, axis, set);
    CHECK((numerical - physical).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("hll flux upwinds when the center velocity dominates") {
  const IndexSet set(2);
  // All signal speeds positive: flux must be the left state's flux.
  const ExpansionCenter fast{{20.0, 0.0, 0.0}, 1.0};
  const Eigen::VectorXd fl = random_coeffs(set, 3u), fr = random_coeffs(set, 4u);
  const Eigen::VectorXd upwind = ibex::hll_flux(fl, fr, fast, 2, 0, set);
  CHECK((upwind - ibex::flux_vector(fl, fast, 0, set)).cwiseAbs().maxCoeff() == 0.0);
  // Mirrored for negative speeds.
  const ExpansionCenter back{{-20.0, 0.0, 0.0}, 1.0};
  const Eigen::VectorXd downwind = ibex::hll_flux(fl, fr, back, 2, 0, set);
  CHECK((downwind - ibex::flux_vector(fr, back, 0, set)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cfl step matches the analytic bound and validates its input") {
  GridGeometry geometry;
  geometry.dims = 2;
  geometry.cells = {10, 20};
  geometry.length = {1.0, 4.0};
  const ExpansionCenter center{{0.5, -0.2, 0.0}, 1.44};
  const int m = 4;
  const double c = ibex::largest_hermite_root(m + 1) * 1.2;
  const double bound_x = 0.1 / (0.5 + c);
  const double bound_y = 0.2 / (0.2 + c);
  const double expected = 0.3 * std::min(bound_x, bound_y);
  CHECK(ibex::cfl_dt(geometry, center, m, 0.3) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(ibex::cfl_dt(geometry, center, m, 0.0), ibex::ConfigError);
  CHECK_THROWS_AS(ibex::cfl_dt(geometry, center, m, 1.5), ibex::ConfigError);
}

TEST_CASE("half fluxes of the wall maxwellian") {
  // F+(0, theta) = sqrt(theta / 2 pi); difference is the mean velocity.
  CHECK(ibex::half_flux_positive(0.0, 1.0) ==
        doctest::Approx(std::sqrt(1.0 / (2.0 * std::numbers::pi))).epsilon(1e-14));
  for (const double u : {-1.2, -0.1, 0.0, 0.3, 2.5})
    for (const double theta : {0.4, 1.0, 3.0}) {
      const double plus = ibex::half_flux_positive(u, theta);
      const double minus = ibex::half_flux_negative(u, theta);
      CHECK(plus > 0.0);
      CHECK(minus > 0.0);
      CHECK(plus - minus == doctest::Approx(u).epsilon(1e-12));
      // Reflection symmetry.
      CHECK(minus == doctest::Approx(ibex::half_flux_positive(-u, theta)).epsilon(1e-12));
    }
}

TEST_CASE("periodic ghost cells wrap the interior, including corners") {
  const IndexSet set(1);
  GridGeometry geometry;
  geometry.dims = 2;
  geometry.cells = {4, 3};
  geometry.length = {1.0, 1.0};
  GridField grid(geometry, {}, 1);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i)
      grid.cell(i, j) = Eigen::Vector4d(100.0 * i + j, 0, 0, 0);
  BoundarySpec periodic;
  ibex::apply_boundaries(grid, periodic, set);
  CHECK(grid.cell(-1, 0)[0] == grid.cell(3, 0)[0]);
  CHECK(grid.cell(-2, 1)[0] == grid.cell(2, 1)[0]);
  CHECK(grid.cell(4, 2)[0] == grid.cell(0, 2)[0]);
  CHECK(grid.cell(0, -1)[0] == grid.cell(0, 2)[0]);
  CHECK(grid.cell(2, 3)[0] == grid.cell(2, 0)[0]);
  // Corner ghosts wrap diagonally.
  CHECK(grid.cell(-1, -1)[0] == grid.cell(3, 2)[0]);
  CHECK(grid.cell(4, 3)[0] == grid.cell(0, 0)[0]);
}

TEST_CASE("wall ghosts reproduce an equilibrium wall state exactly") {
  // Interior cells hold the wall maxwellian at the grid center: the
  // balance-matched ghost must equal the interior state.
  const int m = 3;
  const IndexSet set(m);
  GridGeometry geometry;
  geometry.dims = 1;
  geometry.cells = {6, 1};
  geometry.length = {1.0, 1.0};
  GridField grid(geometry, {{0.0, 0.0, 0.0}, 1.0}, m);
  const ibex::SpectralState wall_state = ibex::SpectralState::maxwellian(1.0, {}, m);
  for (int i = 0; i < 6; ++i) grid.cell(i) = wall_state.coeffs;

  BoundarySpec walls;
  walls.kind[0][0] = BoundaryKind::diffusive_wall;
  walls.kind[0][1] = BoundaryKind::diffusive_wall;
  walls.wall[0][0].theta = 1.0;
  walls.wall[0][1].theta = 1.0;
  ibex::apply_boundaries(grid, walls, set);
  CHECK((grid.cell(-1) - grid.cell(0)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((grid.cell(-2) - grid.cell(0)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((grid.cell(6) - grid.cell(5)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("boundary pairing is validated") {
  BoundarySpec spec;
  spec.kind[0][0] = BoundaryKind::diffusive_wall;  // low wall, high periodic
  CHECK_THROWS_AS(spec.validate(1), ibex::ConfigError);
  spec.kind[0][1] = BoundaryKind::diffusive_wall;
  CHECK_NOTHROW(spec.validate(1));
}

TEST_CASE("periodic convection conserves every coefficient to 1e-12") {
  const int m = 3;
  const IndexSet set(m);
  for (const int dims : {1, 2}) {
    GridGeometry geometry;
    geometry.dims = dims;
    geometry.cells = {12, dims == 2 ? 8 : 1};
    geometry.length = {1.0, 1.0};
    GridField grid(geometry, {{0.4, 0.2, 0.0}, 1.0}, m);
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> dist(-0.05, 0.05);
    const int ny = dims == 2 ? 8 : 1;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < 12; ++i) {
        Eigen::VectorXd f(set.size());
        for (int r = 0; r < set.size(); ++r) f[r] = dist(rng);
        f[0] = 1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * (i + 0.5) / 12.0);
        grid.cell(i, j) = f;
      }
    std::vector<double> before(static_cast<std::size_t>(set.size()));
    for (int r = 0; r < set.size(); ++r) before[static_cast<std::size_t>(r)] = grid.integrated_coefficient(r);

    BoundarySpec periodic;
    const double dt = ibex::cfl_dt(geometry, grid.center(), m, 0.4);
    for (int step = 0; step < 5; ++step) ibex::convection_step(grid, periodic, dt, set);

    for (int r = 0; r < set.size(); ++r)
      CHECK(std::abs(grid.integrated_coefficient(r) - before[static_cast<std::size_t>(r)]) <=
            1e-12 * std::max(1.0, std::abs(before[static_cast<std::size_t>(r)])));
    CHECK(grid.all_finite());
  }
}

TEST_CASE("uniform equilibrium is a steady state of convection") {
  const int m = 2;
  const IndexSet set(m);
  GridGeometry geometry;
  geometry.dims = 2;
  geometry.cells = {6, 5};
  geometry.length = {1.0, 2.0};
  GridField grid(geometry, {{0.3, -0.1, 0.0}, 1.2}, m);
  Eigen::VectorXd f(set.size());
  f.setZero();
  f[0] = 2.0;
  f[4] = 0.01;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i) grid.cell(i, j) = f;
  const GridField before = grid;
  BoundarySpec periodic;
  ibex::convection_step(grid, periodic, 1e-3, set);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i)
      CHECK((grid.cell(i, j) - before.cell(i, j)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("convection rejects steps beyond the cfl bound") {
  const int m = 4;
  const IndexSet set(m);
  GridGeometry geometry;
  geometry.dims = 1;
  geometry.cells = {8, 1};
  geometry.length = {1.0, 1.0};
  GridField grid(geometry, {}, m);
  for (int i = 0; i < 8; ++i) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(set.size());
    f[0] = 1.0;
    grid.cell(i) = f;
  }
  BoundarySpec periodic;
  const double dt_max = ibex::cfl_dt(geometry, grid.center(), m, 0.999);
  CHECK_THROWS_AS(ibex::convection_step(grid, periodic, 2.0 * dt_max, set), ibex::TimeStepError);
}
