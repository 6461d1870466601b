#pragma once

#include <array>
#include <vector>

namespace ibex {

struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2/2)/sqrt(2*pi) on R:
/// sum_i w_i f(x_i) ~ integral of f against the standard Gaussian.
Quadrature1D gauss_hermite(int n);

/// Gauss-Legendre rule on [a, b].
Quadrature1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Product grid on the unit sphere: Gauss-Legendre in cos(theta) times a
/// uniform (trapezoidal) azimuth grid. Weights sum to 4*pi and the rule is
/// exact for spherical polynomials up to degree min(2*n_polar-1, n_azimuth-1).
struct SphereGrid {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  SphereGrid(int n_polar, int n_azimuth);
};

}  // namespace ibex
