#include "ibex/projection.hpp"

#include <cmath>

#include "ibex/errors.hpp"

namespace ibex {

SpectralState project(const SpectralState& state, const ExpansionCenter& target,
                      const IndexSet& set) {
  if (target.t_bar <= 0.0) throw StateError("project: target temperature must be > 0");
  if (state.max_degree != set.max_degree() || state.coeffs.size() != set.size())
    throw ConfigError("project: state and index set disagree on the truncation");

  const int n = set.size();
  const int m = set.max_degree();
  const double t_src = state.center.t_bar;
  const double t_dst = target.t_bar;
  const Eigen::Vector3d du = state.center.u_bar - target.u_bar;
  const double dt_half = 0.5 * (t_src - t_dst);

  // phi(r, l) for l = 0..deg(alpha_r); each level pulls from strictly lower
  // degrees at the previous level, so filling in rank order suffices.
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, m + 1);
  for (int r = 0; r < n; ++r) {
    const int deg = set[r].degree();
    phi(r, 0) = std::pow(t_src, 0.5 * deg) * state.coeffs[r];
    for (int l = 1; l <= deg; ++l) {
      double acc = 0.0;
      for (int d = 0; d < 3; ++d) {
        const int r1 = set.rank_lowered(r, d);
        if (r1 >= 0) acc += du[d] * phi(r1, l - 1);
        const int r2 = set.rank_lowered2(r, d);
        if (r2 >= 0) acc += dt_half * phi(r2, l - 1);
      }
      phi(r, l) = acc / l;
    }
  }

  SpectralState out = SpectralState::zero(m, target);
  for (int r = 0; r < n; ++r) {
    const int deg = set[r].degree();
    out.coeffs[r] = std::pow(t_dst, -0.5 * deg) * phi.row(r).head(deg + 1).sum();
  }
  return out;
}

}  // namespace ibex
