#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>

#include "ibex/collision_model.hpp"
#include "ibex/collision_tensor.hpp"
#include "ibex/grid.hpp"
#include "ibex/kernel.hpp"
#include "ibex/scales.hpp"
#include "ibex/solver.hpp"
#include "ibex/spectral_state.hpp"

namespace ibex {

enum class ProblemKind { heating, haff, inhomogeneous };

/// Initial macroscopic fields. `uniform` fills every cell with the
/// background state; `sine2d` modulates density (and optionally
/// temperature) as background * [1 + amplitude sin(2 pi mode_x x / lx)
/// sin(2 pi mode_y y / ly)].
struct InitialField {
  std::string profile = "uniform";
  double rho = 1.0;
  Eigen::Vector3d u = Eigen::Vector3d::Zero();
  double theta = 1.0;
  double amplitude = 0.5;
  int mode_x = 1;
  int mode_y = 1;
  double theta_amplitude = 0.0;
};

/// Fully parsed run description, all values nondimensional. Configs written
/// with a `scales.*` section give lengths, velocities, temperatures and
/// densities in SI units; parsing divides them out. Time-like keys are
/// always nondimensional.
struct ModelConfig {
  ProblemKind problem = ProblemKind::heating;
  KernelSpec kernel;
  int m0 = 2;
  int m = 2;
  double nu1_override = -1.0;  // < 0 means: estimate from the tensor
  double nu2_override = -1.0;  // < 0 means: restitution-based default
  double prandtl = 2.0 / 3.0;
  double drop_tol = 1e-14;
  double kn = 1.0;
  std::optional<PhysicalScales> scales;
  double dt = 0.01;
  double t_end = 1.0;
  double cfl = 0.3;
  bool strang = false;
  int threads = 0;
  double heating_epsilon = 0.0;
  double output_interval = 0.0;
  bool physical_output = false;
  // Inhomogeneous problems only:
  GridGeometry geometry;
  ExpansionCenter convection_center;
  BoundarySpec boundary;
  InitialField init;
};

/// Parses `key = value` text ('#' starts a comment, keys use dotted
/// sections). Every diagnostic names the offending key; unknown and
/// duplicate keys are rejected.
ModelConfig parse_config(const std::string& text);
ModelConfig load_config(const std::filesystem::path& path);

/// Time-loop controls of a config (collision rates left at defaults).
SolverParams solver_params_from(const ModelConfig& config);

/// Collision-model parameters with the relaxation rates resolved: explicit
/// overrides win, otherwise nu1 comes from the tensor's damped spectrum and
/// nu2 from the restitution formula. Rates are irrelevant when m0 == m.
CollisionModelParams resolve_model_params(const ModelConfig& config,
                                          const CollisionTensor& tensor);

/// Initial state for homogeneous problems: a Maxwellian with the configured
/// background fields, expanded at its own center.
SpectralState build_initial_state(const ModelConfig& config);

/// Initial grid for inhomogeneous problems: per-cell Maxwellians from the
/// configured profile, projected onto the convection center.
GridField build_initial_grid(const ModelConfig& config, const IndexSet& set);

}  // namespace ibex
