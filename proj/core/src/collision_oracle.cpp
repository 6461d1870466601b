#include "ibex/collision_oracle.hpp"

#include <cmath>
#include <numbers>

#include "ibex/errors.hpp"
#include "ibex/hermite.hpp"
#include "ibex/parallel.hpp"
#include "ibex/quadrature.hpp"

namespace ibex {

namespace {

// Flattened (l, k, g) lookup into the per-axis moment tables.
inline std::size_t axis_slot(int dim, int l, int k, int g) {
  return static_cast<std::size_t>((l * dim + k) * dim + g);
}

}  // namespace

bool CollisionOracle::resolution_adequate(const OracleResolution& res, int max_degree) {
  return 2 * res.gh_points - 1 >= 3 * max_degree && res.gh_points >= 1;
}

CollisionOracle::CollisionOracle(const KernelSpec& kernel, int max_degree,
                                 const OracleResolution& res)
    : kernel_(kernel), max_degree_(max_degree) {
  if (!kernel.valid()) throw ConfigError("CollisionOracle: invalid kernel parameters");
  if (max_degree < 0) throw ConfigError("CollisionOracle: max degree must be >= 0");
  adequate_ = resolution_adequate(res, max_degree);

  const IndexSet set(max_degree);
  n_ = set.size();
  const int n = n_;
  const int dim = max_degree + 1;  // per-axis degree range

  const Quadrature1D gh = gauss_hermite(res.gh_points);
  const SphereGrid sigma_grid(res.sphere_polar, res.sphere_azimuth);
  const SphereGrid dir_grid(res.direction_polar, res.direction_azimuth);

  // Radius panels: the integrand decays like exp(-r^2/4); beyond r = 16 it is
  // below 1e-28 relative to the peak for every degree handled here.
  std::vector<double> r_nodes, r_weights;
  for (const auto& [a, b] : {std::pair{0.0, 4.0}, {4.0, 9.0}, {9.0, 16.0}}) {
    const Quadrature1D panel = gauss_legendre(res.radial_points, a, b);
    r_nodes.insert(r_nodes.end(), panel.nodes.begin(), panel.nodes.end());
    r_weights.insert(r_weights.end(), panel.weights.begin(), panel.weights.end());
  }

  // Scattering sums sum_sigma w (g'/2)^beta factor out of the radius as
  // r^|beta| (u/2)^beta with u = (1-e)/2 ghat + (1+e)/2 sigma, so they only
  // depend on the relative-velocity direction.
  const double half_minus = 0.5 * (1.0 - kernel.e);
  const double half_plus = 0.5 * (1.0 + kernel.e);
  const std::size_t n_dir = dir_grid.points.size();
  std::vector<double> w_hat(n_dir * static_cast<std::size_t>(n), 0.0);
  double s0 = 0.0;
  for (double w : sigma_grid.weights) s0 += w;
  for (std::size_t id = 0; id < n_dir; ++id) {
    const auto& ghat = dir_grid.points[id];
    for (std::size_t is = 0; is < sigma_grid.points.size(); ++is) {
      const auto& sig = sigma_grid.points[is];
      const double w = sigma_grid.weights[is];
      const double u1 = 0.5 * (half_minus * ghat[0] + half_plus * sig[0]);
      const double u2 = 0.5 * (half_minus * ghat[1] + half_plus * sig[1]);
      const double u3 = 0.5 * (half_minus * ghat[2] + half_plus * sig[2]);
      for (int rb = 0; rb < n; ++rb) {
        const MultiIndex beta = set[rb];
        w_hat[id * static_cast<std::size_t>(n) + static_cast<std::size_t>(rb)] +=
            w * std::pow(u1, beta[0]) * std::pow(u2, beta[1]) * std::pow(u3, beta[2]);
      }
    }
  }

  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const double prefactor =
      std::pow(2.0, -1.5) * std::pow(2.0 * std::numbers::pi, -1.5);

  const std::size_t table_size =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<std::vector<double>> partial(r_nodes.size(),
                                           std::vector<double>(table_size, 0.0));

  parallel_for(static_cast<std::int64_t>(r_nodes.size()), [&](std::int64_t ir) {
    const double r = r_nodes[static_cast<std::size_t>(ir)];
    const double radial_w = r_weights[static_cast<std::size_t>(ir)] * r * r *
                            std::exp(-0.25 * r * r) * kernel.c_const *
                            std::pow(r, kernel.mu());
    std::vector<double>& acc = partial[static_cast<std::size_t>(ir)];
    const std::size_t stride = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) *
                               static_cast<std::size_t>(dim);
    std::vector<double> axis(3 * stride, 0.0);
    std::vector<double> he_shift_p(static_cast<std::size_t>(dim));
    std::vector<double> he_shift_m(static_cast<std::size_t>(dim));
    std::vector<double> he_plain(static_cast<std::size_t>(dim));
    std::vector<double> r_pow(static_cast<std::size_t>(dim * 3 + 1));
    r_pow[0] = 1.0;
    for (std::size_t p = 1; p < r_pow.size(); ++p) r_pow[p] = r_pow[p - 1] * r;

    for (std::size_t id = 0; id < n_dir; ++id) {
      const auto& ghat = dir_grid.points[id];
      const double dir_w = dir_grid.weights[id] * radial_w;

      // Per-axis Gauss-Hermite moments of the two shifted Hermite factors
      // against a plain one; the 3D mean-velocity integral is their product.
      std::fill(axis.begin(), axis.end(), 0.0);
      for (int d = 0; d < 3; ++d) {
        const double shift = 0.5 * r * ghat[d];
        double* slab = axis.data() + static_cast<std::size_t>(d) * stride;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
          const double y = gh.nodes[i] * inv_sqrt2;
          const double w = gh.weights[i];
          hermite_eval_all(dim - 1, y + shift, he_shift_p.data());
          hermite_eval_all(dim - 1, y - shift, he_shift_m.data());
          hermite_eval_all(dim - 1, y, he_plain.data());
          for (int l = 0; l < dim; ++l)
            for (int k = 0; k < dim; ++k) {
              const double lk = w * he_shift_p[static_cast<std::size_t>(l)] *
                                he_shift_m[static_cast<std::size_t>(k)];
              for (int g = 0; g < dim; ++g)
                slab[axis_slot(dim, l, k, g)] += lk * he_plain[static_cast<std::size_t>(g)];
            }
        }
      }

      const double* wh = w_hat.data() + id * static_cast<std::size_t>(n);
      for (int ra = 0; ra < n; ++ra) {
        const MultiIndex alpha = set[ra];
        const double inv_fact = 1.0 / factorial(alpha);
        // Gain minus loss of the scattering average for every beta <= alpha.
        for (int rb = 0; rb < n; ++rb) {
          const MultiIndex beta = set[rb];
          if (!beta.leq(alpha)) continue;
          const double ghat_pow = std::pow(0.5 * ghat[0], beta[0]) *
                                  std::pow(0.5 * ghat[1], beta[1]) *
                                  std::pow(0.5 * ghat[2], beta[2]);
          const double scatter =
              r_pow[static_cast<std::size_t>(beta.degree())] *
              (wh[rb] - s0 * ghat_pow);
          if (scatter == 0.0) continue;
          const double common = dir_w * inv_fact * binomial(alpha, beta) * scatter;
          const MultiIndex gam = alpha - beta;
          // Accumulate over all (lambda, kappa) with the separable moments.
          for (int rl = 0; rl < n; ++rl) {
            const MultiIndex lam = set[rl];
            for (int rk = 0; rk < n; ++rk) {
              const MultiIndex kap = set[rk];
              const double prod =
                  axis[axis_slot(dim, lam[0], kap[0], gam[0])] *
                  axis[stride + axis_slot(dim, lam[1], kap[1], gam[1])] *
                  axis[2 * stride + axis_slot(dim, lam[2], kap[2], gam[2])];
              acc[(static_cast<std::size_t>(ra) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(rl)) *
                      static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(rk)] += common * prod;
            }
          }
        }
      }
    }
  });

  raw_.assign(table_size, 0.0);
  for (const auto& slice : partial)
    for (std::size_t i = 0; i < table_size; ++i) raw_[i] += slice[i];
  for (double& v : raw_) v *= prefactor;
}

double CollisionOracle::fetch(const MultiIndex& alpha, const MultiIndex& lambda,
                              const MultiIndex& kappa) const {
  if (alpha.degree() > max_degree_ || lambda.degree() > max_degree_ ||
      kappa.degree() > max_degree_)
    throw ConfigError("CollisionOracle: index degree exceeds the table bound");
  const std::size_t n = static_cast<std::size_t>(n_);
  return raw_[(static_cast<std::size_t>(rank_of(alpha)) * n +
               static_cast<std::size_t>(rank_of(lambda))) *
                  n +
              static_cast<std::size_t>(rank_of(kappa))];
}

double CollisionOracle::raw_entry(const MultiIndex& alpha, const MultiIndex& lambda,
                                  const MultiIndex& kappa) const {
  return fetch(alpha, lambda, kappa);
}

double CollisionOracle::entry(const MultiIndex& alpha, const MultiIndex& lambda,
                              const MultiIndex& kappa) const {
  return 0.5 * (fetch(alpha, lambda, kappa) + fetch(alpha, kappa, lambda));
}

}  // namespace ibex
