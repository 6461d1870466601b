#pragma once

#include <vector>

#include "ibex/multi_index.hpp"

namespace ibex {

/// Probabilists' Hermite polynomial He_n(x) via the three-term recurrence
/// He_{n+1}(x) = x He_n(x) - n He_{n-1}(x), He_0 = 1, He_1 = x.
double hermite_eval_1d(int n, double x);

/// Evaluates He_0..He_n at x into out (out.size() == n+1).
void hermite_eval_all(int n, double x, double* out);

/// Coefficient of x^k in He_n(x); zero when k > n or n - k is odd.
/// Grown on demand from the integer-exact coefficient recurrence.
double hermite_coeff(int n, int k);

/// Largest root of He_n, n >= 1 (eigenvalue method on the Jacobi matrix).
double largest_hermite_root(int n);

/// n!, n <= 170.
double factorial(int n);

/// Falling-free binomial C(n, k); zero outside 0 <= k <= n.
double binomial(int n, int k);

/// Double factorial n!! with (-1)!! = 1 and 0!! = 1.
double double_factorial(int n);

/// alpha! = a1! a2! a3!.
double factorial(const MultiIndex& alpha);

/// C(alpha, beta) = prod_d C(alpha_d, beta_d).
double binomial(const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace ibex
