#pragma once

#include <cmath>

namespace ibex {

/// Exact SI Boltzmann constant (J/K).
inline constexpr double kBoltzmann = 1.380649e-23;

/// Characteristic quantities converting between SI inputs and the
/// dimensionless variables used internally. Velocities scale by u0, times
/// by t0, temperatures by theta0, densities by rho0, lengths by x0;
/// stresses scale by rho0*u0^2 and heat fluxes by rho0*u0^3.
struct PhysicalScales {
  double x0 = 1.0;      // length (m)
  double m0 = 1.0;      // molecular mass (kg)
  double theta0 = 1.0;  // temperature (K)
  double rho0 = 1.0;    // density (kg/m^3)
  double d_ref = 1.0;   // reference molecular diameter (m)

  double u0() const { return std::sqrt(kBoltzmann * theta0 / m0); }
  double t0() const { return x0 / u0(); }
  bool valid() const { return x0 > 0 && m0 > 0 && theta0 > 0 && rho0 > 0 && d_ref > 0; }
};

/// Knudsen number of a hard-sphere gas at the characteristic state:
/// m0 / (sqrt(2) pi rho0 d_ref^2 x0).
double compute_knudsen(const PhysicalScales& scales);

}  // namespace ibex
