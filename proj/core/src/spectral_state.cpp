#include "ibex/spectral_state.hpp"

#include <cmath>
#include <numbers>

#include "ibex/errors.hpp"
#include "ibex/hermite.hpp"

namespace ibex {

SpectralState SpectralState::zero(int max_degree, const ExpansionCenter& center) {
  if (center.t_bar <= 0.0) throw StateError("SpectralState: center temperature must be > 0");
  SpectralState s;
  s.coeffs = Eigen::VectorXd::Zero(basis_count(max_degree));
  s.center = center;
  s.max_degree = max_degree;
  return s;
}

SpectralState SpectralState::maxwellian(double rho, const ExpansionCenter& center,
                                        int max_degree) {
  if (rho <= 0.0) throw StateError("SpectralState::maxwellian: density must be > 0");
  SpectralState s = zero(max_degree, center);
  s.coeffs[0] = rho;
  return s;
}

double gaussian_weight(const ExpansionCenter& center, const Eigen::Vector3d& v) {
  const double t = center.t_bar;
  const double r2 = (v - center.u_bar).squaredNorm();
  return std::pow(2.0 * std::numbers::pi * t, -1.5) * std::exp(-r2 / (2.0 * t));
}

double basis_eval(const MultiIndex& alpha, const ExpansionCenter& center,
                  const Eigen::Vector3d& v) {
  const double s = std::sqrt(center.t_bar);
  double r = 1.0;
  for (int d = 0; d < 3; ++d) r *= hermite_eval_1d(alpha[d], (v[d] - center.u_bar[d]) / s);
  return r;
}

double weighted_basis_eval(const MultiIndex& alpha, const ExpansionCenter& center,
                           const Eigen::Vector3d& v) {
  return basis_eval(alpha, center, v) * gaussian_weight(center, v);
}

double reconstruct(const SpectralState& state, const IndexSet& set, const Eigen::Vector3d& v) {
  double sum = 0.0;
  for (int r = 0; r < set.size(); ++r)
    sum += state.coeffs[r] * weighted_basis_eval(set[r], state.center, v);
  return sum;
}

}  // namespace ibex
