#pragma once

#include <Eigen/Core>

#include "ibex/multi_index.hpp"
#include "ibex/spectral_state.hpp"

namespace ibex {

/// Macroscopic fields of a distribution: density, bulk velocity, temperature,
/// deviatoric stress (pressure tensor minus the isotropic part rho*theta) and
/// heat flux.
struct MacroState {
  double rho = 0.0;
  Eigen::Vector3d u = Eigen::Vector3d::Zero();
  double theta = 0.0;
  Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
  Eigen::Vector3d q = Eigen::Vector3d::Zero();
};

/// Recovers the macroscopic fields from a spectral expansion. The expansion
/// center may differ from the local bulk velocity and temperature; the
/// formulas account for the offset exactly. Coefficients of degrees beyond
/// the truncation are treated as zero.
MacroState macro_from_state(const SpectralState& state, const IndexSet& set);

/// The expansion center located at the bulk velocity and temperature of the
/// given macroscopic fields. Throws StateError if the density or temperature
/// is not positive.
ExpansionCenter local_center_of(const MacroState& macro);

}  // namespace ibex
