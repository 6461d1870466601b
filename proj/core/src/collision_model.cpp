#include "ibex/collision_model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "ibex/errors.hpp"

namespace ibex {

void quadratic_accumulate(const Eigen::VectorXd& coeffs, const CollisionTensor& tensor,
                          int band, double scale, const IndexSet& set, Eigen::VectorXd& out) {
  // Ranks are degree-ordered, so the degree-<=-band filter is a rank bound.
  const int band_count = static_cast<int>(basis_count(band));
  const int rows = std::min({tensor.rows(), set.size(), band_count});
  const bool full_band =
      band >= tensor.m() && static_cast<int>(coeffs.size()) >= tensor.rows();
  for (int a = 0; a < rows; ++a) {
    double acc = 0.0;
    for (std::int64_t i = tensor.row_begin(a); i < tensor.row_end(a); ++i) {
      const int l = static_cast<int>(tensor.entry_lambda(i));
      const int k = static_cast<int>(tensor.entry_kappa(i));
      if (!full_band && (l >= band_count || k >= band_count)) continue;
      acc += tensor.entry_value(i) * coeffs[l] * coeffs[k];
    }
    out[a] += scale * acc;
  }
}

Eigen::VectorXd quadratic_spectrum(const SpectralState& state, const CollisionTensor& tensor,
                                   int band, const IndexSet& set) {
  if (band < 0 || band > tensor.m())
    throw ConfigError("quadratic_spectrum: band exceeds the tensor degree");
  if (state.max_degree != set.max_degree() || state.coeffs.size() != set.size())
    throw ConfigError("quadratic_spectrum: state and index set disagree");
  if (band > state.max_degree)
    throw ConfigError("quadratic_spectrum: band exceeds the state degree");
  const double t = state.center.t_bar;
  if (std::abs(tensor.center_t_bar() - t) > 1e-12 * std::max(1.0, std::abs(t)))
    throw ConfigError("quadratic_spectrum: tensor was rescaled for a different center");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(set.size());
  quadratic_accumulate(state.coeffs, tensor, band, 1.0, set, out);
  return out;
}

Eigen::VectorXd esbgk_spectrum(double rho, const Eigen::Matrix3d& stress, double prandtl,
                               const IndexSet& set, int pivot) {
  if (rho <= 0.0) throw StateError("esbgk_spectrum: density must be > 0");
  if (prandtl <= 0.0) throw ConfigError("esbgk_spectrum: Prandtl number must be > 0");
  const double factor = 1.0 - 1.0 / prandtl;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(set.size());
  g[0] = rho;
  for (int r = 1; r < set.size(); ++r) {
    const MultiIndex& alpha = set[r];
    if (alpha.degree() < 2) continue;
    int i = pivot;
    if (i < 0 || alpha[i] == 0) {
      i = 0;
      while (alpha[i] == 0) ++i;
    }
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int down = set.rank_lowered(r, i);
      const int rr = down < 0 ? -1 : set.rank_lowered(down, k);
      if (rr >= 0) acc += stress(i, k) * g[rr];
    }
    g[r] = factor * acc / (alpha[i] * rho);
  }
  return g;
}

Eigen::VectorXd linear_spectrum(const SpectralState& state, const CollisionModelParams& params,
                                const IndexSet& set) {
  if (state.max_degree != set.max_degree() || state.coeffs.size() != set.size())
    throw ConfigError("linear_spectrum: state and index set disagree");
  const double rho = state.coeffs[0];
  if (rho <= 0.0) throw StateError("linear_spectrum: density must be > 0");

  // The linear branch is formulated at the local center: first moments and
  // the temperature correction must vanish.
  const double tol = 1e-8 * rho;
  double trace2 = 0.0;
  for (int d = 0; d < 3; ++d) {
    const int r1 = set.rank(unit_index(d));
    if (std::abs(state.coeffs[r1]) > tol)
      throw StateError("linear_spectrum: state is not expanded at its local center (velocity)");
    const int r2 = set.rank(unit_index(d).plus(d));
    trace2 += state.coeffs[r2];
  }
  if (std::abs(trace2) > tol)
    throw StateError("linear_spectrum: state is not expanded at its local center (temperature)");

  const double theta = state.center.t_bar;
  Eigen::Matrix3d stress;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const int r = set.rank(unit_index(k) + unit_index(l));
      stress(k, l) = (k == l ? 2.0 : 1.0) * theta * state.coeffs[r];
    }

  const Eigen::VectorXd g = esbgk_spectrum(rho, stress, params.prandtl, set);
  Eigen::VectorXd out(set.size());
  for (int r = 0; r < set.size(); ++r) {
    const int deg = set[r].degree();
    double drift = deg * state.coeffs[r];
    for (int d = 0; d < 3; ++d) {
      const int rr = set.rank_lowered2(r, d);
      if (rr >= 0) drift += state.coeffs[rr];
    }
    out[r] = params.nu1 * rho * (g[r] - state.coeffs[r]) - params.nu2 * rho * drift;
  }
  return out;
}

Eigen::VectorXd new_model_spectrum(const SpectralState& state, const CollisionTensor& tensor,
                                   const CollisionModelParams& params, const IndexSet& set) {
  if (params.m0 > params.m || params.m != set.max_degree())
    throw ConfigError("new_model_spectrum: inconsistent band/degree parameters");
  if (params.m0 > tensor.m())
    throw ConfigError("new_model_spectrum: quadratic band exceeds the tensor degree");
  Eigen::VectorXd out = linear_spectrum(state, params, set);
  // The quadratic contraction replaces the linear branch on |alpha| <= m0.
  const double t = state.center.t_bar;
  if (std::abs(tensor.center_t_bar() - t) > 1e-12 * std::max(1.0, std::abs(t)))
    throw ConfigError("new_model_spectrum: tensor was rescaled for a different center");
  for (int r = 0; r < set.size() && set[r].degree() <= params.m0; ++r) out[r] = 0.0;
  quadratic_accumulate(state.coeffs, tensor, params.m0, 1.0, set, out);
  return out;
}

double estimate_nu1(const CollisionTensor& tensor, int m0) {
  if (m0 < 2) throw ConfigError("estimate_nu1: band must be >= 2");
  if (m0 > tensor.m()) throw ConfigError("estimate_nu1: band exceeds the tensor degree");
  const int lo = static_cast<int>(basis_count(1));   // first rank of degree 2
  const int hi = static_cast<int>(basis_count(m0));  // one past the last rank
  const int n = hi - lo;
  Eigen::MatrixXd l_matrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int l = 0; l < n; ++l)
      l_matrix(a, l) = tensor.value_at(lo + a, lo + l, 0) + tensor.value_at(lo + a, 0, lo + l);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(l_matrix);
  double nu1 = 0.0;
  bool damped = false;
  for (int i = 0; i < n; ++i) {
    const double re = solver.eigenvalues()[i].real();
    if (re < 0.0) {
      damped = true;
      nu1 = std::max(nu1, -re);
    }
  }
  if (!damped)
    throw Error("estimate_nu1: linearized operator has no damped modes; "
                "set the relaxation rate explicitly");
  return nu1;
}

double nu2_default(double e) {
  return 2.0 * (1.0 - e * e) / (3.0 * std::sqrt(std::numbers::pi));
}

}  // namespace ibex
