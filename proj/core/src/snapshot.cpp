#include "ibex/snapshot.hpp"

#include <cstdio>
#include <ostream>

#include "ibex/errors.hpp"
#include "ibex/macrostate.hpp"

namespace ibex {

namespace {

struct UnitFactors {
  double x = 1.0, t = 1.0, rho = 1.0, u = 1.0, theta = 1.0, sigma = 1.0, q = 1.0;
};

UnitFactors factors_of(const OutputScaling& scaling) {
  UnitFactors f;
  if (!scaling.physical) return f;
  if (!scaling.scales.valid())
    throw ConfigError("snapshot: physical output requires valid characteristic scales");
  const double u0 = scaling.scales.u0();
  f.x = scaling.scales.x0;
  f.t = scaling.scales.t0();
  f.rho = scaling.scales.rho0;
  f.u = u0;
  f.theta = scaling.scales.theta0;
  f.sigma = scaling.scales.rho0 * u0 * u0;
  f.q = scaling.scales.rho0 * u0 * u0 * u0;
  return f;
}

void put(std::ostream& out, double value, bool first = false) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  if (!first) out << ',';
  out << buffer;
}

void put_macro(std::ostream& out, const MacroState& macro, const UnitFactors& f) {
  put(out, macro.rho * f.rho);
  for (int k = 0; k < 3; ++k) put(out, macro.u[k] * f.u);
  put(out, macro.theta * f.theta);
  put(out, macro.sigma(0, 0) * f.sigma);
  put(out, macro.sigma(0, 1) * f.sigma);
  put(out, macro.sigma(0, 2) * f.sigma);
  put(out, macro.sigma(1, 1) * f.sigma);
  put(out, macro.sigma(1, 2) * f.sigma);
  for (int k = 0; k < 3; ++k) put(out, macro.q[k] * f.q);
  out << '\n';
}

constexpr const char* kMacroColumns =
    "rho,u1,u2,u3,theta,sigma11,sigma12,sigma13,sigma22,sigma23,q1,q2,q3";

}  // namespace

void write_grid_snapshot(std::ostream& out, const GridField& grid, const IndexSet& set, double t,
                         const OutputScaling& scaling) {
  const UnitFactors f = factors_of(scaling);
  const GridGeometry& geometry = grid.geometry();
  out << (geometry.dims == 2 ? "t,x,y," : "t,x,") << kMacroColumns << '\n';
  const int ny = geometry.dims == 2 ? geometry.cells[1] : 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < geometry.cells[0]; ++i) {
      SpectralState cell;
      cell.coeffs = grid.cell(i, j);
      cell.center = grid.center();
      cell.max_degree = grid.max_degree();
      const MacroState macro = macro_from_state(cell, set);
      put(out, t * f.t, true);
      put(out, (i + 0.5) * geometry.dx(0) * f.x);
      if (geometry.dims == 2) put(out, (j + 0.5) * geometry.dx(1) * f.x);
      put_macro(out, macro, f);
    }
  if (!out) throw Error("snapshot: write failed");
}

void write_series(std::ostream& out, const std::vector<HomogeneousSample>& series,
                  const OutputScaling& scaling) {
  const UnitFactors f = factors_of(scaling);
  out << "t," << kMacroColumns << '\n';
  for (const HomogeneousSample& sample : series) {
    put(out, sample.t * f.t, true);
    put_macro(out, sample.macro, f);
  }
  if (!out) throw Error("snapshot: write failed");
}

}  // namespace ibex
