#include "ibex/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ibex/errors.hpp"
#include "ibex/parallel.hpp"
#include "ibex/projection.hpp"
#include "ibex/transport.hpp"

namespace ibex {

namespace {

/// Hybrid collision spectrum of a state already expanded at its local
/// center, with the tensor and the relaxation rates scaled by
/// theta^(1-varpi) (the tensor itself is stored at reference temperature).
Eigen::VectorXd hybrid_spectrum_local(const SpectralState& state, const CollisionTensor& tensor,
                                      const CollisionModelParams& params, const IndexSet& set) {
  const double scale = std::pow(state.center.t_bar, 1.0 - tensor.kernel().varpi);
  Eigen::VectorXd q;
  if (params.m0 >= set.max_degree()) {
    q = Eigen::VectorXd::Zero(set.size());
  } else {
    CollisionModelParams effective = params;
    effective.nu1 *= scale;
    effective.nu2 *= scale;
    q = linear_spectrum(state, effective, set);
    const int band_count = static_cast<int>(basis_count(params.m0));
    q.head(band_count).setZero();
  }
  quadratic_accumulate(state.coeffs, tensor, params.m0, scale, set, q);
  return q;
}

}  // namespace

SpectralState collision_substep(const SpectralState& cell, const CollisionTensor& tensor,
                                const CollisionModelParams& params, double dt, double kn,
                                const IndexSet& set) {
  if (kn <= 0.0) throw ConfigError("collision_substep: Knudsen number must be > 0");
  if (params.m0 > tensor.m())
    throw ConfigError("collision_substep: quadratic band exceeds the tensor degree");
  const MacroState macro = macro_from_state(cell, set);
  const ExpansionCenter local = local_center_of(macro);
  SpectralState working = project(cell, local, set);
  working.coeffs += (dt / kn) * hybrid_spectrum_local(working, tensor, params, set);
  const MacroState after = macro_from_state(working, set);
  if (after.theta <= 0.0)
    throw TimeStepError("collision_substep: temperature became nonpositive; reduce dt");
  return project(working, cell.center, set);
}

double heating_exact(double theta0, double epsilon, double e, double t) {
  if (e >= 1.0) throw ConfigError("heating_exact: requires e < 1");
  const double steady = 8.0 * epsilon / (1.0 - e * e);
  return (theta0 - steady) * std::exp(-(1.0 - e * e) * t / 4.0) + steady;
}

namespace {

/// Galerkin increment of the isotropic velocity-space diffusion source at a
/// fixed expansion center: dt*eps/T * sum_d f_{alpha-2e_d}, from old coeffs.
void add_heating(SpectralState& state, double dt_eps, const IndexSet& set) {
  const double factor = dt_eps / state.center.t_bar;
  Eigen::VectorXd increment = Eigen::VectorXd::Zero(set.size());
  for (int r = 0; r < set.size(); ++r) {
    double acc = 0.0;
    for (int d = 0; d < 3; ++d) {
      const int rr = set.rank_lowered2(r, d);
      if (rr >= 0) acc += state.coeffs[rr];
    }
    increment[r] = acc;
  }
  state.coeffs += factor * increment;
}

int step_count(double t_end, double dt) {
  if (dt <= 0.0) throw ConfigError("solver: dt must be > 0");
  if (t_end < 0.0) throw ConfigError("solver: t_end must be >= 0");
  return static_cast<int>(std::llround(t_end / dt));
}

}  // namespace

std::vector<HomogeneousSample> run_heating(SpectralState state, const CollisionTensor& tensor,
                                           const SolverParams& params, double epsilon,
                                           const IndexSet& set) {
  if (epsilon < 0.0) throw ConfigError("run_heating: epsilon must be >= 0");
  const int n_steps = step_count(params.t_end, params.dt);
  std::vector<HomogeneousSample> series;
  series.reserve(static_cast<std::size_t>(n_steps) + 1);
  series.push_back({0.0, macro_from_state(state, set)});
  for (int n = 0; n < n_steps; ++n) {
    if (params.strang) {
      add_heating(state, 0.5 * params.dt * epsilon, set);
      state = collision_substep(state, tensor, params.model, params.dt, params.kn, set);
      add_heating(state, 0.5 * params.dt * epsilon, set);
    } else {
      add_heating(state, params.dt * epsilon, set);
      state = collision_substep(state, tensor, params.model, params.dt, params.kn, set);
    }
    series.push_back({(n + 1) * params.dt, macro_from_state(state, set)});
  }
  return series;
}

std::vector<HomogeneousSample> run_haff(SpectralState state, const CollisionTensor& tensor,
                                        const SolverParams& params, const IndexSet& set) {
  const int n_steps = step_count(params.t_end, params.dt);
  // Keep the state expanded at its own local center throughout.
  state = project(state, local_center_of(macro_from_state(state, set)), set);
  std::vector<HomogeneousSample> series;
  series.reserve(static_cast<std::size_t>(n_steps) + 1);
  series.push_back({0.0, macro_from_state(state, set)});
  for (int n = 0; n < n_steps; ++n) {
    state.coeffs +=
        (params.dt / params.kn) * hybrid_spectrum_local(state, tensor, params.model, set);
    const MacroState macro = macro_from_state(state, set);
    if (macro.theta <= 0.0)
      throw TimeStepError("run_haff: temperature became nonpositive; reduce dt");
    state = project(state, local_center_of(macro), set);
    series.push_back({(n + 1) * params.dt, macro});
  }
  return series;
}

HaffFit haff_fit(const std::vector<double>& t, const std::vector<double>& theta) {
  if (t.size() != theta.size()) throw ConfigError("haff_fit: series length mismatch");
  if (t.size() < 10) throw ConfigError("haff_fit: needs at least 10 samples");
  for (double th : theta)
    if (th <= 0.0) throw ConfigError("haff_fit: temperatures must be > 0");

  const double theta0 = theta.front();
  const auto residual = [&](double gamma) {
    double sse = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double denom = 1.0 + gamma * t[i];
      const double diff = theta[i] - theta0 / (denom * denom);
      sse += diff * diff;
    }
    return sse;
  };

  // Golden-section minimization on [0, 10].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 10.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = residual(c), fd = residual(d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = residual(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = residual(d);
    }
  }

  HaffFit fit;
  fit.gamma0 = 0.5 * (a + b);
  const double sse = residual(fit.gamma0);
  double mean = 0.0;
  for (double th : theta) mean += th;
  mean /= static_cast<double>(theta.size());
  double sst = 0.0;
  for (double th : theta) sst += (th - mean) * (th - mean);
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  for (std::size_t i = 1; i < theta.size(); ++i)
    if (theta[i] > theta[i - 1] + 1e-12 * theta0) {
      fit.monotone = false;
      break;
    }
  return fit;
}

namespace {

void collide_all(GridField& grid, const CollisionTensor& tensor,
                 const CollisionModelParams& params, double dt, double kn, const IndexSet& set,
                 int threads) {
  parallel_for(
      static_cast<std::size_t>(grid.interior_count()),
      [&](std::size_t flat) {
        const auto [i, j] = grid.interior_cell(static_cast<int>(flat));
        SpectralState cell;
        cell.coeffs = grid.cell(i, j);
        cell.center = grid.center();
        cell.max_degree = grid.max_degree();
        grid.cell(i, j) = collision_substep(cell, tensor, params, dt, kn, set).coeffs;
      },
      threads);
}

/// Largest nu1 * rho * theta^(1-varpi) over interior cells, bounding the
/// explicit relaxation step.
double damping_scale(const GridField& grid, const CollisionTensor& tensor,
                     const CollisionModelParams& params, const IndexSet& set) {
  const double exponent = 1.0 - tensor.kernel().varpi;
  double worst = 0.0;
  for (int flat = 0; flat < grid.interior_count(); ++flat) {
    const auto [i, j] = grid.interior_cell(flat);
    SpectralState cell;
    cell.coeffs = grid.cell(i, j);
    cell.center = grid.center();
    cell.max_degree = grid.max_degree();
    const MacroState macro = macro_from_state(cell, set);
    worst = std::max(worst, params.nu1 * macro.rho * std::pow(macro.theta, exponent));
  }
  return worst;
}

}  // namespace

void run_inhomogeneous(GridField& grid, const BoundarySpec& boundary,
                       const CollisionTensor& tensor, const SolverParams& params,
                       const IndexSet& set, const SnapshotCallback& on_snapshot) {
  boundary.validate(grid.geometry().dims);
  if (set.max_degree() != grid.max_degree())
    throw ConfigError("run_inhomogeneous: grid and index set disagree");
  if (params.kn <= 0.0) throw ConfigError("run_inhomogeneous: Knudsen number must be > 0");
  const double dt_convection = cfl_dt(grid.geometry(), grid.center(), grid.max_degree(), params.cfl);

  const double t_end = params.t_end;
  const double tiny = 1e-12 * std::max(1.0, t_end);
  double t = 0.0;
  if (on_snapshot) on_snapshot(t, grid);
  double last_emit = t;
  double next_output = params.output_interval > 0.0 ? params.output_interval
                                                    : std::numeric_limits<double>::infinity();
  GridField last_good = grid;
  double last_good_t = t;

  while (t < t_end - tiny) {
    double dt = std::min({params.dt, dt_convection, t_end - t, next_output - t});
    const double damping = damping_scale(grid, tensor, params.model, set);
    if (damping > 0.0) dt = std::min(dt, 0.9 * params.kn / damping);

    if (params.strang) {
      collide_all(grid, tensor, params.model, 0.5 * dt, params.kn, set, params.threads);
      convection_step(grid, boundary, dt, set, params.threads);
      collide_all(grid, tensor, params.model, 0.5 * dt, params.kn, set, params.threads);
    } else {
      convection_step(grid, boundary, dt, set, params.threads);
      collide_all(grid, tensor, params.model, dt, params.kn, set, params.threads);
    }

    if (!grid.all_finite()) {
      if (on_snapshot) on_snapshot(last_good_t, last_good);
      throw StateError("run_inhomogeneous: non-finite data at t = " + std::to_string(t) +
                       "; emitted the last completed state");
    }
    t += dt;
    last_good = grid;
    last_good_t = t;
    if (t >= next_output - tiny) {
      if (on_snapshot) on_snapshot(t, grid);
      last_emit = t;
      next_output += params.output_interval;
    }
  }
  if (on_snapshot && t > last_emit + tiny) on_snapshot(t, grid);
}

}  // namespace ibex
