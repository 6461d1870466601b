#pragma once

#include <Eigen/Core>

#include "ibex/grid.hpp"
#include "ibex/multi_index.hpp"
#include "ibex/spectral_state.hpp"

namespace ibex {

/// Convective flux of every coefficient along one axis, from the moment
/// recurrence: F_alpha = (alpha_d+1) sqrt(T) f_{alpha+e_d} + u_d f_alpha
///             + sqrt(T) f_{alpha-e_d}, out-of-range terms zero.
/// Equivalent to applying the (constant) flux Jacobian of that axis.
Eigen::VectorXd flux_vector(const Eigen::VectorXd& coeffs, const ExpansionCenter& center,
                            int axis, const IndexSet& set);

/// Second-order WENO face values from three consecutive cell averages
/// (f_{j-1}, f_j, f_{j+1}): the value at the right face of cell j (used as
/// the left state of interface j+1/2) and at the left face of cell j (the
/// right state of interface j-1/2). Componentwise nonlinear weights with
/// gamma = (1/3, 2/3) and epsilon = 1e-6.
double weno_left_value(double fm1, double f0, double fp1);
double weno_right_value(double fm1, double f0, double fp1);
void weno_reconstruct(const Eigen::Ref<const Eigen::VectorXd>& fm1,
                      const Eigen::Ref<const Eigen::VectorXd>& f0,
                      const Eigen::Ref<const Eigen::VectorXd>& fp1,
                      Eigen::VectorXd& left_face, Eigen::VectorXd& right_face);

/// Extreme signal speeds used by the HLL flux and the CFL condition:
/// u_d -+ c sqrt(T), where c is the largest root of the Hermite polynomial
/// of degree m+1.
struct SignalSpeeds {
  double lambda_l;
  double lambda_r;
};
SignalSpeeds signal_speeds(const ExpansionCenter& center, int m, int axis);

/// Two-wave HLL numerical flux between a left and a right state.
Eigen::VectorXd hll_flux(const Eigen::VectorXd& f_left, const Eigen::VectorXd& f_right,
                         const ExpansionCenter& center, int m, int axis, const IndexSet& set);

/// Largest stable convection step: cfl * min over active axes of
/// dx_d / (|u_d| + c sqrt(T)).
double cfl_dt(const GridGeometry& geometry, const ExpansionCenter& center, int m, double cfl);

/// One-sided mass fluxes of a unit-density Maxwellian with mean normal
/// velocity u and temperature theta: outflow through v > 0 and through
/// v < 0 respectively. Both are positive; their difference is u.
double half_flux_positive(double u, double theta);
double half_flux_negative(double u, double theta);

/// Fills every ghost layer. Periodic sides wrap interior data around.
/// A diffusive wall emits the wall Maxwellian, expressed at the grid's
/// convection center, with its density matched so the wall's incoming mass
/// flux balances the outgoing mass flux of the adjacent interior cell
/// (computed from that cell's Maxwellian approximation).
void apply_boundaries(GridField& grid, const BoundarySpec& spec, const IndexSet& set);

/// One forward-Euler convection update with WENO reconstruction and HLL
/// fluxes; 2D grids apply both axis sweeps in a single unsplit increment.
/// Throws TimeStepError if dt violates the CFL bound.
void convection_step(GridField& grid, const BoundarySpec& spec, double dt, const IndexSet& set,
                     int threads = 0);

}  // namespace ibex
