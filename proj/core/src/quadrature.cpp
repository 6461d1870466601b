#include "ibex/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ibex/errors.hpp"

namespace ibex {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
Quadrature1D golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                          double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag);
  const int n = static_cast<int>(diag.size());
  Quadrature1D q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    q.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    q.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return q;
}

}  // namespace

Quadrature1D gauss_hermite(int n) {
  if (n < 1) throw ConfigError("gauss_hermite: order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd offdiag(std::max(0, n - 1));
  for (int k = 1; k < n; ++k) offdiag[k - 1] = std::sqrt(static_cast<double>(k));
  return golub_welsch(diag, offdiag, 1.0);
}

Quadrature1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_legendre: order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd offdiag(std::max(0, n - 1));
  for (int k = 1; k < n; ++k)
    offdiag[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  Quadrature1D q = golub_welsch(diag, offdiag, 2.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

SphereGrid::SphereGrid(int n_polar, int n_azimuth) {
  if (n_polar < 1 || n_azimuth < 1) throw ConfigError("SphereGrid: orders must be >= 1");
  const Quadrature1D polar = gauss_legendre(n_polar);
  const double dphi = 2.0 * std::numbers::pi / n_azimuth;
  points.reserve(static_cast<std::size_t>(n_polar * n_azimuth));
  weights.reserve(static_cast<std::size_t>(n_polar * n_azimuth));
  for (int i = 0; i < n_polar; ++i) {
    const double mu = polar.nodes[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = dphi * j;
      points.push_back({s * std::cos(phi), s * std::sin(phi), mu});
      weights.push_back(polar.weights[static_cast<std::size_t>(i)] * dphi);
    }
  }
}

}  // namespace ibex
