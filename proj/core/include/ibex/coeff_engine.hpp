#pragma once

#include "ibex/collision_tensor.hpp"
#include "ibex/kernel.hpp"
#include "ibex/multi_index.hpp"

namespace ibex {

/// Monomial moment of the unit sphere, integral over S^2 of sigma^kappa:
/// 4 pi (kappa - 1)!! / (|kappa| + 1)!! when all components are even
/// (componentwise double factorials), zero otherwise.
double sphere_moment(const MultiIndex& kappa);

/// Weighted Gaussian moment, integral over R^3 of
/// v^kappa H_beta(v) |v|^mu omega(v) dv, evaluated in closed form.
double gaussian_moment(const MultiIndex& kappa, const MultiIndex& beta, double mu);

/// Loss-side bracket: integral over R^3 x S^2 of
/// H_alpha(g) H_beta(g) |g|^mu omega(g) dsigma dg = 4 pi * (Gaussian moments).
/// At mu = 0 this reduces to 4 pi alpha! delta_{alpha beta}.
double coeff_psi(const MultiIndex& alpha, const MultiIndex& beta, double mu);

/// Gain-side bracket: same integral with H_alpha evaluated at the reflected
/// relative velocity g' = (1-e)/2 g + (1+e)/2 |g| sigma.
double coeff_D(const MultiIndex& alpha, const MultiIndex& beta, double mu, double e);

/// Relative-velocity collision bracket gamma_kappa^j for a VHS kernel:
/// c_const * 2^(5/2 - varpi) * [D(j, kappa, mu, e) - psi(j, kappa, mu)]
/// with mu = 2 (1 - varpi). Zero when j = 0 (mass is never created).
double gamma_coeff(const MultiIndex& kappa, const MultiIndex& j, const KernelSpec& kernel);

/// Two-center Hermite product-transform coefficient c(l, k, l'):
/// 2^(-(l'+k')/2) sum_s C(l,s) C(k,l'-s) (-1)^(k-l'+s) with k' = l + k - l'.
/// Out-of-range binomials vanish; returns 0 when l' > l + k.
double c_coeff(int l, int k, int l_prime);

/// Assembles the full coefficient tensor for degrees <= m at the reference
/// center temperature 1, stored symmetrized over (lambda, kappa) so that
/// every contraction against a product f_lambda f_kappa is unchanged while
/// conserved rows (|alpha| <= 1) vanish entrywise. Entries with magnitude
/// <= drop_tol are omitted. threads <= 0 selects the default worker count.
CollisionTensor assemble_tensor(int m, const KernelSpec& kernel, double drop_tol = 1e-14,
                                int threads = 0);

}  // namespace ibex
