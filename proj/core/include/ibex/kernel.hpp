#pragma once

#include <cmath>

namespace ibex {

/// Variable-hard-sphere collision kernel B(|g|) = c_const * |g|^(2 (1 - varpi))
/// together with the restitution coefficient e of the inelastic reflection.
/// varpi = 1 is the Maxwell kernel, varpi = 0.5 the hard-sphere kernel.
struct KernelSpec {
  double varpi = 1.0;
  double c_const = 1.0;
  double e = 1.0;

  /// Exponent mu = 2 (1 - varpi) of the relative-speed power law.
  double mu() const { return 2.0 * (1.0 - varpi); }

  bool valid() const {
    return c_const > 0.0 && varpi > 0.0 && varpi <= 1.0 && e >= 0.0 && e <= 1.0;
  }

  static KernelSpec maxwell(double c_const, double e) { return {1.0, c_const, e}; }
  static KernelSpec hard_sphere(double c_const, double e) { return {0.5, c_const, e}; }
};

}  // namespace ibex
