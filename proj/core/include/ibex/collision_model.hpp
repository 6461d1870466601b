#pragma once

#include <Eigen/Core>

#include "ibex/collision_tensor.hpp"
#include "ibex/multi_index.hpp"
#include "ibex/spectral_state.hpp"

namespace ibex {

/// Parameters of the hybrid collision model: full truncation degree m,
/// quadratic band m0 <= m, and the relaxation/cooling rates of the linear
/// branch. nu1/nu2 are used as given (already resolved and center-scaled).
struct CollisionModelParams {
  int m0 = 0;
  int m = 0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double prandtl = 2.0 / 3.0;
};

/// Quadratic spectrum Q_alpha = sum_{|lambda|,|kappa| <= band} A f_lambda f_kappa
/// for |alpha| <= band, zero beyond. The state must live at the center the
/// tensor was rescaled to (enforced through the center temperature).
Eigen::VectorXd quadratic_spectrum(const SpectralState& state, const CollisionTensor& tensor,
                                   int band, const IndexSet& set);

/// Unchecked kernel of the quadratic contraction: accumulates
/// scale * A f f into out (sized like the index set).
void quadratic_accumulate(const Eigen::VectorXd& coeffs, const CollisionTensor& tensor,
                          int band, double scale, const IndexSet& set, Eigen::VectorXd& out);

/// Hermite coefficients of the anisotropic Gaussian of the ES-BGK model with
/// density rho and trace-free stress, by the two-step downward recursion.
/// pivot selects the recursion direction for testing; pivot < 0 uses the
/// first nonzero component (the result is direction-independent).
Eigen::VectorXd esbgk_spectrum(double rho, const Eigen::Matrix3d& stress, double prandtl,
                               const IndexSet& set, int pivot = -1);

/// Linearized collision spectrum
/// Q_L = nu1 f_0 (f_G - f) - nu2 f_0 (|alpha| f_alpha + sum_d f_{alpha - 2 e_d})
/// for every |alpha| <= m. The state must be expanded at its local center
/// (vanishing first moments), checked to 1e-8 * f_0.
Eigen::VectorXd linear_spectrum(const SpectralState& state, const CollisionModelParams& params,
                                const IndexSet& set);

/// Hybrid spectrum: quadratic contraction on |alpha| <= m0, linear branch on
/// m0 < |alpha| <= m. Same preconditions as the two branches.
Eigen::VectorXd new_model_spectrum(const SpectralState& state, const CollisionTensor& tensor,
                                   const CollisionModelParams& params, const IndexSet& set);

/// Relaxation rate nu1 from the linearization of the quadratic operator
/// around the unit Maxwellian: eigenvalues of L_{alpha lambda} =
/// A_{alpha,lambda,0} + A_{alpha,0,lambda} over 2 <= |alpha|,|lambda| <= m0;
/// returns the largest damping magnitude max{|Re| : Re < 0}.
double estimate_nu1(const CollisionTensor& tensor, int m0);

/// Cooling drift rate nu2(e) = 2 (1 - e^2) / (3 sqrt(pi)).
double nu2_default(double e);

}  // namespace ibex
