#pragma once

#include <vector>

#include "ibex/kernel.hpp"
#include "ibex/multi_index.hpp"

namespace ibex {

/// Quadrature resolution of the oracle. gh_points is the Gauss-Hermite order
/// per axis on the mean-velocity integral; the sphere grid handles the
/// scattering direction; the relative velocity is integrated in spherical
/// form (direction grid x panelled Gauss-Legendre radius), where the
/// integrand is a polynomial times |g|^mu times a Gaussian.
struct OracleResolution {
  int gh_points = 20;
  int sphere_polar = 32;
  int sphere_azimuth = 64;
  int direction_polar = 12;
  int direction_azimuth = 24;
  int radial_points = 48;  // per panel, three panels up to |g| = 16
};

/// Direct numerical evaluation of the eight-dimensional collision integral
/// defining A_{alpha, lambda, kappa}, sharing no closed-form machinery with
/// the assembly chain. All entries with degrees <= max_degree are computed
/// in one pass over the quadrature nodes.
///
/// Accuracy model: after the exact change to mean/relative velocities the
/// mean-velocity factor is a polynomial integrated exactly by gh_points
/// Gauss-Hermite nodes whenever 2*gh_points - 1 >= 3*max_degree; both sphere
/// grids are exact for the polynomial scattering dependence; the radial
/// factor r^(2+mu) p(r) exp(-r^2/4) is resolved to ~1e-13 by the panelled
/// Gauss-Legendre rule. Total error is dominated by the radial rule.
class CollisionOracle {
 public:
  CollisionOracle(const KernelSpec& kernel, int max_degree,
                  const OracleResolution& resolution = {});

  const KernelSpec& kernel() const { return kernel_; }
  int max_degree() const { return max_degree_; }

  /// True when the mean-velocity rule is exact for this degree bound.
  static bool resolution_adequate(const OracleResolution& resolution, int max_degree);
  bool adequate() const { return adequate_; }

  /// Symmetrized entry 0.5 * (raw(a,l,k) + raw(a,k,l)); matches the stored
  /// tensor convention.
  double entry(const MultiIndex& alpha, const MultiIndex& lambda, const MultiIndex& kappa) const;

  /// Unsymmetrized integral with the test increment H_alpha(v') - H_alpha(v).
  double raw_entry(const MultiIndex& alpha, const MultiIndex& lambda,
                   const MultiIndex& kappa) const;

 private:
  double fetch(const MultiIndex& alpha, const MultiIndex& lambda, const MultiIndex& kappa) const;

  KernelSpec kernel_;
  int max_degree_;
  bool adequate_;
  int n_;                     // rank count at max_degree
  std::vector<double> raw_;   // raw_[(a*n + l)*n + k]
};

}  // namespace ibex
