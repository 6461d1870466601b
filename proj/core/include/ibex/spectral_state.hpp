#pragma once

#include <Eigen/Core>

#include "ibex/multi_index.hpp"

namespace ibex {

/// Expansion center [u_bar, t_bar] of the Hermite basis; t_bar > 0.
struct ExpansionCenter {
  Eigen::Vector3d u_bar{0.0, 0.0, 0.0};
  double t_bar = 1.0;

  friend bool operator==(const ExpansionCenter& x, const ExpansionCenter& y) {
    return x.u_bar == y.u_bar && x.t_bar == y.t_bar;
  }
};

/// Coefficient vector of a distribution in the weighted Hermite basis
/// attached to an expansion center. coeffs[r] multiplies the basis function
/// of the multi-index with rank r; max_degree pins the truncation.
struct SpectralState {
  Eigen::VectorXd coeffs;
  ExpansionCenter center;
  int max_degree = 0;

  static SpectralState zero(int max_degree, const ExpansionCenter& center = {});
  /// Maxwellian with density rho at its own center: f_0 = rho, rest 0.
  static SpectralState maxwellian(double rho, const ExpansionCenter& center, int max_degree);
};

/// Gaussian weight omega_{u_bar, t_bar}(v) = (2 pi t_bar)^{-3/2} exp(-|v - u_bar|^2 / (2 t_bar)).
double gaussian_weight(const ExpansionCenter& center, const Eigen::Vector3d& v);

/// Unweighted basis polynomial H_alpha^{center}(v) = prod_d He_{alpha_d}((v_d - u_bar_d)/sqrt(t_bar)).
double basis_eval(const MultiIndex& alpha, const ExpansionCenter& center, const Eigen::Vector3d& v);

/// Weighted basis function H_alpha^{center}(v) * omega_{center}(v).
double weighted_basis_eval(const MultiIndex& alpha, const ExpansionCenter& center,
                           const Eigen::Vector3d& v);

/// Pointwise reconstruction sum_alpha f_alpha * weighted basis.
double reconstruct(const SpectralState& state, const IndexSet& set, const Eigen::Vector3d& v);

}  // namespace ibex
