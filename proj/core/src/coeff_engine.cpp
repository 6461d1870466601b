#include "ibex/coeff_engine.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "ibex/errors.hpp"
#include "ibex/hermite.hpp"
#include "ibex/parallel.hpp"

namespace ibex {

namespace {

// The closed-form coefficients are alternating sums with heavy cancellation:
// entries that vanish identically (conservation rows, Maxwell degree
// sparsity) must come out numerically below the drop tolerance. All
// intermediate accumulation therefore runs in extended precision and only
// the final tensor values are rounded to double.
using real = long double;

constexpr real kFourPi = 4.0L * std::numbers::pi_v<real>;

bool all_even(const MultiIndex& k) {
  return k[0] % 2 == 0 && k[1] % 2 == 0 && k[2] % 2 == 0;
}

// 3-bit componentwise parity mask.
unsigned parity_mask(const MultiIndex& k) {
  return static_cast<unsigned>(k[0] & 1) | static_cast<unsigned>((k[1] & 1) << 1) |
         static_cast<unsigned>((k[2] & 1) << 2);
}

real sphere_moment_r(const MultiIndex& kappa) {
  if (!all_even(kappa)) return 0.0L;
  real num = 1.0L;
  for (int d = 0; d < 3; ++d) num *= static_cast<real>(double_factorial(kappa[d] - 1));
  return kFourPi * num / static_cast<real>(double_factorial(kappa.degree() + 1));
}

real gaussian_moment_r(const MultiIndex& kappa, const MultiIndex& beta, real mu) {
  const int nk = kappa.degree();
  real sum = 0.0L;
  MultiIndex j;
  for (j[0] = beta[0] % 2; j[0] <= beta[0]; j[0] += 2) {
    for (j[1] = beta[1] % 2; j[1] <= beta[1]; j[1] += 2) {
      for (j[2] = beta[2] % 2; j[2] <= beta[2]; j[2] += 2) {
        const real s = sphere_moment_r(j + kappa);
        if (s == 0.0L) continue;
        const real coeff = static_cast<real>(hermite_coeff(beta[0], j[0])) *
                           static_cast<real>(hermite_coeff(beta[1], j[1])) *
                           static_cast<real>(hermite_coeff(beta[2], j[2]));
        if (coeff == 0.0L) continue;
        const real p = mu + static_cast<real>(j.degree() + nk);
        sum += coeff * std::pow(2.0L, 0.5L * (1.0L + p)) * std::tgamma(0.5L * (3.0L + p)) * s;
      }
    }
  }
  return std::pow(2.0L * std::numbers::pi_v<real>, -1.5L) * sum;
}

real coeff_psi_r(const MultiIndex& alpha, const MultiIndex& beta, real mu) {
  real sum = 0.0L;
  MultiIndex lam;
  for (lam[0] = alpha[0] % 2; lam[0] <= alpha[0]; lam[0] += 2) {
    for (lam[1] = alpha[1] % 2; lam[1] <= alpha[1]; lam[1] += 2) {
      for (lam[2] = alpha[2] % 2; lam[2] <= alpha[2]; lam[2] += 2) {
        const real coeff = static_cast<real>(hermite_coeff(alpha[0], lam[0])) *
                           static_cast<real>(hermite_coeff(alpha[1], lam[1])) *
                           static_cast<real>(hermite_coeff(alpha[2], lam[2]));
        if (coeff == 0.0L) continue;
        sum += coeff * gaussian_moment_r(lam, beta, mu);
      }
    }
  }
  return kFourPi * sum;
}

real coeff_D_r(const MultiIndex& alpha, const MultiIndex& beta, real mu, real e) {
  const real half_minus = 0.5L * (1.0L - e);
  const real half_plus = 0.5L * (1.0L + e);
  real sum = 0.0L;
  MultiIndex lam;
  for (lam[0] = alpha[0] % 2; lam[0] <= alpha[0]; lam[0] += 2) {
    for (lam[1] = alpha[1] % 2; lam[1] <= alpha[1]; lam[1] += 2) {
      for (lam[2] = alpha[2] % 2; lam[2] <= alpha[2]; lam[2] += 2) {
        const real hc = static_cast<real>(hermite_coeff(alpha[0], lam[0])) *
                        static_cast<real>(hermite_coeff(alpha[1], lam[1])) *
                        static_cast<real>(hermite_coeff(alpha[2], lam[2]));
        if (hc == 0.0L) continue;
        const int nl = lam.degree();
        real inner = 0.0L;
        MultiIndex kap;
        for (kap[0] = lam[0] % 2; kap[0] <= lam[0]; kap[0] += 2) {
          for (kap[1] = lam[1] % 2; kap[1] <= lam[1]; kap[1] += 2) {
            for (kap[2] = lam[2] % 2; kap[2] <= lam[2]; kap[2] += 2) {
              const real s = sphere_moment_r(lam - kap);
              if (s == 0.0L) continue;
              const int nkap = kap.degree();
              inner += static_cast<real>(binomial(lam, kap)) *
                       std::pow(half_minus, static_cast<real>(nkap)) *
                       std::pow(half_plus, static_cast<real>(nl - nkap)) * s *
                       gaussian_moment_r(kap, beta, static_cast<real>(nl - nkap) + mu);
            }
          }
        }
        sum += hc * inner;
      }
    }
  }
  return sum;
}

real gamma_coeff_r(const MultiIndex& kappa, const MultiIndex& j, const KernelSpec& kernel) {
  const real mu = static_cast<real>(kernel.mu());
  const real bracket =
      coeff_D_r(j, kappa, mu, static_cast<real>(kernel.e)) - coeff_psi_r(j, kappa, mu);
  return static_cast<real>(kernel.c_const) *
         std::pow(2.0L, 2.5L - static_cast<real>(kernel.varpi)) * bracket;
}

real c_coeff_r(int l, int k, int l_prime) {
  const int k_prime = l + k - l_prime;
  if (k_prime < 0) return 0.0L;
  real sum = 0.0L;
  const int s_lo = std::max(0, l_prime - k);
  const int s_hi = std::min(l, l_prime);
  for (int s = s_lo; s <= s_hi; ++s) {
    const real term =
        static_cast<real>(binomial(l, s)) * static_cast<real>(binomial(k, l_prime - s));
    sum += ((k - l_prime + s) % 2 == 0) ? term : -term;
  }
  return std::pow(2.0L, -0.5L * static_cast<real>(l_prime + k_prime)) * sum;
}

}  // namespace

double sphere_moment(const MultiIndex& kappa) {
  if (!kappa.valid()) throw ConfigError("sphere_moment: negative index");
  return static_cast<double>(sphere_moment_r(kappa));
}

double gaussian_moment(const MultiIndex& kappa, const MultiIndex& beta, double mu) {
  if (!kappa.valid() || !beta.valid()) throw ConfigError("gaussian_moment: negative index");
  return static_cast<double>(gaussian_moment_r(kappa, beta, static_cast<real>(mu)));
}

double coeff_psi(const MultiIndex& alpha, const MultiIndex& beta, double mu) {
  return static_cast<double>(coeff_psi_r(alpha, beta, static_cast<real>(mu)));
}

double coeff_D(const MultiIndex& alpha, const MultiIndex& beta, double mu, double e) {
  return static_cast<double>(coeff_D_r(alpha, beta, static_cast<real>(mu), static_cast<real>(e)));
}

double gamma_coeff(const MultiIndex& kappa, const MultiIndex& j, const KernelSpec& kernel) {
  if (!kernel.valid()) throw ConfigError("gamma_coeff: invalid kernel parameters");
  return static_cast<double>(gamma_coeff_r(kappa, j, kernel));
}

double c_coeff(int l, int k, int l_prime) {
  if (l < 0 || k < 0 || l_prime < 0) throw ConfigError("c_coeff: negative argument");
  return static_cast<double>(c_coeff_r(l, k, l_prime));
}

CollisionTensor assemble_tensor(int m, const KernelSpec& kernel, double drop_tol, int threads) {
  if (m < 0) throw ConfigError("assemble_tensor: max degree must be >= 0");
  if (!kernel.valid()) throw ConfigError("assemble_tensor: invalid kernel parameters");

  const IndexSet set(m);
  const IndexSet set2(2 * m);
  const int n = set.size();
  const int n2 = set2.size();

  // Dense bracket table gamma[rank(j)][rank(kappa')] over |j| <= m,
  // |kappa'| <= 2m. Only parity-matched pairs are nonzero.
  std::vector<real> gamma(static_cast<std::size_t>(n) * static_cast<std::size_t>(n2), 0.0L);
  std::vector<unsigned> par(static_cast<std::size_t>(n));
  std::vector<unsigned> par2(static_cast<std::size_t>(n2));
  for (int r = 0; r < n; ++r) par[static_cast<std::size_t>(r)] = parity_mask(set[r]);
  for (int r = 0; r < n2; ++r) par2[static_cast<std::size_t>(r)] = parity_mask(set2[r]);

  parallel_for(n, [&](std::int64_t rj) {
    if (set[static_cast<int>(rj)].degree() == 0) return;  // gamma vanishes at j = 0
    for (int rk = 0; rk < n2; ++rk) {
      if (par[static_cast<std::size_t>(rj)] != par2[static_cast<std::size_t>(rk)]) continue;
      gamma[static_cast<std::size_t>(rj) * static_cast<std::size_t>(n2) +
            static_cast<std::size_t>(rk)] =
          gamma_coeff_r(set2[rk], set[static_cast<int>(rj)], kernel);
    }
  }, threads);

  // Product-transform coefficients c(l, k, l') for l, k <= m.
  const int c_dim = 2 * m + 1;
  std::vector<real> ctab(static_cast<std::size_t>((m + 1) * (m + 1) * c_dim), 0.0L);
  for (int l = 0; l <= m; ++l)
    for (int k = 0; k <= m; ++k)
      for (int lp = 0; lp <= l + k; ++lp)
        ctab[static_cast<std::size_t>((l * (m + 1) + k) * c_dim + lp)] = c_coeff_r(l, k, lp);
  auto c_at = [&](int l, int k, int lp) {
    return ctab[static_cast<std::size_t>((l * (m + 1) + k) * c_dim + lp)];
  };

  std::vector<real> inv_fact(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    inv_fact[static_cast<std::size_t>(r)] = 1.0L / static_cast<real>(factorial(set[r]));

  struct Row {
    std::vector<std::uint32_t> lam, kap;
    std::vector<double> val;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));

  parallel_for(n, [&](std::int64_t ra) {
    const MultiIndex alpha = set[static_cast<int>(ra)];
    const real pref = std::pow(2.0L, -0.5L * static_cast<real>(alpha.degree() + 3));
    const unsigned pa = par[static_cast<std::size_t>(ra)];

    std::vector<real> dense(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0L);
    const auto at = [&dense, n](int l, int k) -> real& {
      return dense[static_cast<std::size_t>(l) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(k)];
    };
    for (int l = 0; l < n; ++l) {
      const MultiIndex lam = set[l];
      for (int k = 0; k < n; ++k) {
        if ((pa ^ par[static_cast<std::size_t>(l)] ^ par[static_cast<std::size_t>(k)]) != 0)
          continue;
        const MultiIndex kap = set[k];
        const MultiIndex s = lam + kap;
        real acc = 0.0L;
        const int h1 = std::min(alpha[0], s[0]);
        const int h2 = std::min(alpha[1], s[1]);
        const int h3 = std::min(alpha[2], s[2]);
        for (int p1 = 0; p1 <= h1; ++p1) {
          const real c1 = c_at(lam[0], kap[0], p1);
          if (c1 == 0.0L) continue;
          for (int p2 = 0; p2 <= h2; ++p2) {
            const real c12 = c1 * c_at(lam[1], kap[1], p2);
            if (c12 == 0.0L) continue;
            for (int p3 = 0; p3 <= h3; ++p3) {
              const real c123 = c12 * c_at(lam[2], kap[2], p3);
              if (c123 == 0.0L) continue;
              const MultiIndex j{alpha[0] - p1, alpha[1] - p2, alpha[2] - p3};
              const MultiIndex kp{s[0] - p1, s[1] - p2, s[2] - p3};
              const real g = gamma[static_cast<std::size_t>(rank_of(j)) *
                                       static_cast<std::size_t>(n2) +
                                   static_cast<std::size_t>(rank_of(kp))];
              if (g == 0.0L) continue;
              acc += c123 * g * inv_fact[static_cast<std::size_t>(rank_of(j))];
            }
          }
        }
        at(l, k) = pref * acc;
      }
    }

    Row& row = rows[static_cast<std::size_t>(ra)];
    for (int l = 0; l < n; ++l) {
      for (int k = 0; k < n; ++k) {
        const double v = static_cast<double>(0.5L * (at(l, k) + at(k, l)));
        if (std::abs(v) > drop_tol) {
          row.lam.push_back(static_cast<std::uint32_t>(l));
          row.kap.push_back(static_cast<std::uint32_t>(k));
          row.val.push_back(v);
        }
      }
    }
  }, threads);

  CollisionTensor tensor(m, kernel, drop_tol);
  for (int ra = 0; ra < n; ++ra) {
    Row& row = rows[static_cast<std::size_t>(ra)];
    tensor.append_row(std::move(row.lam), std::move(row.kap), std::move(row.val));
  }
  tensor.finalize_rows();
  return tensor;
}

}  // namespace ibex
