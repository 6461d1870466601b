#pragma once

#include <iosfwd>
#include <vector>

#include "ibex/grid.hpp"
#include "ibex/multi_index.hpp"
#include "ibex/scales.hpp"
#include "ibex/solver.hpp"

namespace ibex {

/// Unit system of emitted CSV files. Dimensionless by default; with
/// `physical` set, fields are rescaled back to SI via the characteristic
/// scales (x by x0, t by t0, rho by rho0, u by u0, theta by theta0,
/// sigma by rho0*u0^2, q by rho0*u0^3).
struct OutputScaling {
  bool physical = false;
  PhysicalScales scales{};
};

/// One CSV block for a grid at time t: header
/// t,x[,y],rho,u1,u2,u3,theta,sigma11,sigma12,sigma13,sigma22,sigma23,q1,q2,q3
/// and one row per interior cell (x, y are cell centers). Values carry full
/// double precision (17 significant digits).
void write_grid_snapshot(std::ostream& out, const GridField& grid, const IndexSet& set, double t,
                         const OutputScaling& scaling = {});

/// CSV for a homogeneous time series: the same columns without x/y, one row
/// per sample.
void write_series(std::ostream& out, const std::vector<HomogeneousSample>& series,
                  const OutputScaling& scaling = {});

}  // namespace ibex
