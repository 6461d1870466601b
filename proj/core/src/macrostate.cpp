#include "ibex/macrostate.hpp"

#include <cmath>

#include "ibex/errors.hpp"

namespace ibex {

MacroState macro_from_state(const SpectralState& state, const IndexSet& set) {
  if (state.max_degree != set.max_degree() || state.coeffs.size() != set.size())
    throw StateError("macro_from_state: state and index set disagree");

  const int m = set.max_degree();
  const auto coeff = [&](const MultiIndex& alpha) -> double {
    if (alpha.degree() > m) return 0.0;
    return state.coeffs[set.rank(alpha)];
  };

  const double t_bar = state.center.t_bar;
  const double sqrt_t = std::sqrt(t_bar);

  MacroState macro;
  macro.rho = state.coeffs[0];
  if (macro.rho <= 0.0) throw StateError("macro_from_state: density must be > 0");

  for (int k = 0; k < 3; ++k)
    macro.u[k] = state.center.u_bar[k] + sqrt_t * coeff(unit_index(k)) / macro.rho;

  // w is the offset of the expansion velocity from the bulk velocity.
  const Eigen::Vector3d w = state.center.u_bar - macro.u;

  double trace2 = 0.0;
  for (int k = 0; k < 3; ++k) trace2 += coeff(unit_index(k).plus(k));
  macro.theta = 2.0 * t_bar * trace2 / (3.0 * macro.rho) + t_bar - w.squaredNorm() / 3.0;

  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const double diag = k == l ? 1.0 : 0.0;
      macro.sigma(k, l) = (1.0 + diag) * t_bar * coeff(unit_index(k) + unit_index(l)) +
                          diag * macro.rho * (t_bar - macro.theta) - macro.rho * w[k] * w[l];
    }

  const double t32 = t_bar * sqrt_t;
  for (int k = 0; k < 3; ++k) {
    double qk = 2.0 * t32 * coeff(unit_index(k).plus(k).plus(k)) +
                w[k] * t_bar * coeff(unit_index(k).plus(k)) +
                w.squaredNorm() * sqrt_t * coeff(unit_index(k));
    for (int l = 0; l < 3; ++l) {
      qk += t32 * coeff(unit_index(l).plus(l) + unit_index(k)) +
            w[l] * t_bar * coeff(unit_index(l) + unit_index(k)) +
            w[k] * t_bar * coeff(unit_index(l).plus(l));
    }
    macro.q[k] = qk;
  }
  return macro;
}

ExpansionCenter local_center_of(const MacroState& macro) {
  if (macro.rho <= 0.0) throw StateError("local_center_of: density must be > 0");
  if (macro.theta <= 0.0) throw StateError("local_center_of: temperature must be > 0");
  return ExpansionCenter{macro.u, macro.theta};
}

}  // namespace ibex
