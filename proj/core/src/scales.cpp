#include "ibex/scales.hpp"

#include <numbers>

#include "ibex/errors.hpp"

namespace ibex {

double compute_knudsen(const PhysicalScales& scales) {
  if (!scales.valid()) throw ConfigError("compute_knudsen: scales must all be positive");
  return scales.m0 /
         (std::sqrt(2.0) * std::numbers::pi * scales.rho0 * scales.d_ref * scales.d_ref * scales.x0);
}

}  // namespace ibex
