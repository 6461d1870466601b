#pragma once

#include <functional>
#include <vector>

#include "ibex/collision_model.hpp"
#include "ibex/collision_tensor.hpp"
#include "ibex/grid.hpp"
#include "ibex/macrostate.hpp"
#include "ibex/spectral_state.hpp"

namespace ibex {

/// Time-integration controls shared by all drivers. `dt` is the step of the
/// homogeneous drivers and an upper bound for the inhomogeneous loop, whose
/// step is further limited by the CFL condition and by explicit stability of
/// the relaxation term (dt * nu1_eff * rho / kn <= 0.9 in every cell).
struct SolverParams {
  CollisionModelParams model;
  double kn = 1.0;
  double dt = 0.01;
  double t_end = 1.0;
  double cfl = 0.3;
  bool strang = false;  // Strang (half collision / convection / half collision)
  int threads = 0;
  double output_interval = 0.0;  // <= 0: snapshots only at t = 0 and t_end
};

/// One collision update of a single cell: extract the local (u, theta),
/// project onto the local center, evaluate the hybrid spectrum with the
/// tensor and relaxation rates scaled by theta^(1-varpi), advance
/// f += (dt/kn) Q, and project back to the original center. Density and
/// momentum are invariant. Throws TimeStepError if the update drives the
/// temperature nonpositive.
SpectralState collision_substep(const SpectralState& cell, const CollisionTensor& tensor,
                                const CollisionModelParams& params, double dt, double kn,
                                const IndexSet& set);

struct HomogeneousSample {
  double t;
  MacroState macro;
};

/// Exact temperature of the heated homogeneous gas (Maxwell kernel):
/// theta(t) = (theta0 - s) exp(-(1-e^2) t / 4) + s with s = 8 eps/(1-e^2).
double heating_exact(double theta0, double epsilon, double e, double t);

/// Homogeneous gas with an isotropic velocity-space diffusion source of
/// strength epsilon. Forward-Euler loop at the state's fixed expansion
/// center: heating increment, then the collision substep. Records the
/// macroscopic fields at every step.
std::vector<HomogeneousSample> run_heating(SpectralState state, const CollisionTensor& tensor,
                                           const SolverParams& params, double epsilon,
                                           const IndexSet& set);

/// Freely cooling homogeneous gas. The state is kept expanded at its own
/// local center: each step evaluates the hybrid spectrum, advances the
/// coefficients, and re-centers at the updated (u, theta).
std::vector<HomogeneousSample> run_haff(SpectralState state, const CollisionTensor& tensor,
                                        const SolverParams& params, const IndexSet& set);

struct HaffFit {
  double gamma0 = 0.0;
  double r_squared = 0.0;
  bool monotone = true;  // false flags a non-monotone series (fit-quality warning)
};

/// Least-squares fit of theta(t) = theta(0) / (1 + gamma0 t)^2 over
/// gamma0 in [0, 10], via golden-section minimization of the residual.
HaffFit haff_fit(const std::vector<double>& t, const std::vector<double>& theta);

using SnapshotCallback = std::function<void(double t, const GridField& grid)>;

/// Splitting loop for 1D/2D problems: each step applies the convection
/// update and the per-cell collision substep (Lie by default, Strang when
/// configured). Snapshots are emitted at t = 0, at multiples of
/// output_interval, and at t_end. If a step produces non-finite data the
/// last completed state is emitted and a StateError is thrown.
void run_inhomogeneous(GridField& grid, const BoundarySpec& boundary,
                       const CollisionTensor& tensor, const SolverParams& params,
                       const IndexSet& set, const SnapshotCallback& on_snapshot);

}  // namespace ibex
