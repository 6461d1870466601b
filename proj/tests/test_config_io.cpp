#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ibex/cache_io.hpp"
#include "ibex/coeff_engine.hpp"
#include "ibex/config.hpp"
#include "ibex/errors.hpp"
#include "ibex/macrostate.hpp"
#include "ibex/snapshot.hpp"

using ibex::ModelConfig;
using ibex::parse_config;

namespace {

/// Parses and expects a ConfigError whose message names `key`.
void expect_key_error(const std::string& text, const std::string& key) {
  try {
    parse_config(text);
    FAIL_CHECK("expected a ConfigError mentioning '", key, "'");
  } catch (const ibex::ConfigError& err) {
    CHECK(std::string(err.what()).find(key) != std::string::npos);
  }
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::vector<char> file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

const std::string kMinimalHeating =
    "problem = heating\n"
    "kernel.e = 0.5\n"
    "model.m0 = 2\n"
    "model.m = 2\n"
    "time.t_end = 5\n"
    "heating.epsilon = 0.01\n";

}  // namespace

TEST_CASE("minimal heating config fills in documented defaults") {
  const ModelConfig config = parse_config(kMinimalHeating);
  CHECK(config.problem == ibex::ProblemKind::heating);
  CHECK(config.kernel.varpi == 1.0);
  CHECK(config.kernel.c_const == doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK(config.kernel.e == 0.5);
  CHECK(config.m0 == 2);
  CHECK(config.m == 2);
  CHECK(config.nu1_override == -1.0);
  CHECK(config.nu2_override == -1.0);
  CHECK(config.prandtl == doctest::Approx(2.0 / 3.0));
  CHECK(config.drop_tol == 1e-14);
  CHECK(config.kn == 1.0);
  CHECK(!config.scales.has_value());
  CHECK(config.dt == 0.01);
  CHECK(config.t_end == 5.0);
  CHECK(config.cfl == 0.3);
  CHECK(!config.strang);
  CHECK(config.threads == 0);
  CHECK(config.heating_epsilon == 0.01);
  CHECK(config.output_interval == 0.0);
  CHECK(!config.physical_output);
  CHECK(config.init.rho == 1.0);
  CHECK(config.init.theta == 1.0);
  CHECK(config.init.u.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("explicit keys, comments and whitespace are honored") {
  const ModelConfig config = parse_config(
      "# free cooling study\n"
      "problem = haff\n"
      "kernel.varpi = 0.5   # hard spheres\n"
      "kernel.const = 0.056269769759819128\n"
      "kernel.e = 0.8\n"
      "kn = 0.70710678118654746\n"
      "model.m0 = 4\n"
      "model.m = 6\n"
      "model.nu1 = 0.25\n"
      "model.nu2 = auto\n"
      "time.dt = 0.005\n"
      "time.t_end = 5\n"
      "time.splitting = strang\n"
      "threads = 2\n"
      "init.rho = 1.5\n"
      "init.u2 = 0.1\n"
      "init.theta = 2.0\n");
  CHECK(config.problem == ibex::ProblemKind::haff);
  CHECK(config.kernel.varpi == 0.5);
  CHECK(config.kernel.e == 0.8);
  CHECK(config.kn == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(config.nu1_override == 0.25);
  CHECK(config.nu2_override == -1.0);
  CHECK(config.dt == 0.005);
  CHECK(config.strang);
  CHECK(config.threads == 2);
  CHECK(config.init.rho == 1.5);
  CHECK(config.init.u[1] == 0.1);
  CHECK(config.init.theta == 2.0);
}

TEST_CASE("config diagnostics name the offending key") {
  expect_key_error("problem = heating\nmodel.m0 = 2\nmodel.m = 2\n"
                   "time.t_end = 1\nheating.epsilon = 0\n",
                   "kernel.e");  // required key missing
  expect_key_error(kMinimalHeating + "foo.bar = 1\n", "foo.bar");
  expect_key_error(kMinimalHeating + "kernel.e = 0.6\n", "kernel.e");  // duplicate
  expect_key_error(kMinimalHeating + "time.dt = fast\n", "time.dt");
  expect_key_error(kMinimalHeating + "time.cfl = 1.5\n", "time.cfl");
  expect_key_error(kMinimalHeating + "model.nu1 = -0.5\n", "model.nu1");
  expect_key_error("problem = quench\nkernel.e = 0.5\nmodel.m0 = 2\nmodel.m = 2\n"
                   "time.t_end = 1\n",
                   "problem");
  // Output interval applies to every problem; a grid does not belong in a
  // homogeneous run and is reported as unrecognized.
  expect_key_error(kMinimalHeating + "grid.nx = 8\n", "grid.nx");
}

TEST_CASE("malformed lines and values are rejected") {
  CHECK_THROWS_AS(parse_config("problem\n"), ibex::ConfigError);        // no '='
  CHECK_THROWS_AS(parse_config("= 3\n"), ibex::ConfigError);            // empty key
  CHECK_THROWS_AS(parse_config("kn =\n"), ibex::ConfigError);           // empty value
  expect_key_error(kMinimalHeating + "kn = 0\n", "kn");                 // kn must be > 0
  expect_key_error("problem = heating\nkernel.e = 0.5\nmodel.m0 = 2\nmodel.m = 1\n"
                   "time.t_end = 1\nheating.epsilon = 0\n",
                   "model.m");  // band above truncation
  expect_key_error("problem = heating\nkernel.e = 1.5\nmodel.m0 = 2\nmodel.m = 2\n"
                   "time.t_end = 1\nheating.epsilon = 0\n",
                   "kernel");  // restitution outside [0, 1]
}

TEST_CASE("scales section converts SI inputs and derives the knudsen number") {
  const std::string text =
      "problem = inhomogeneous\n"
      "kernel.varpi = 0.5\n"
      "kernel.const = 0.056269769759819128\n"
      "kernel.e = 0.95\n"
      "model.m0 = 2\n"
      "model.m = 2\n"
      "scales.x0 = 1e-3\n"
      "scales.m0 = 6.63e-26\n"
      "scales.theta0 = 273\n"
      "scales.rho0 = 5.662e-4\n"
      "scales.d_ref = 3.63e-10\n"
      "time.t_end = 1\n"
      "output.units = physical\n"
      "grid.nx = 8\n"
      "grid.lx = 1e-3\n"
      "init.u2 = 50\n"
      "init.theta = 273\n"
      "boundary.x.low = wall\n"
      "boundary.x.low.theta = 273\n"
      "boundary.x.high = wall\n"
      "boundary.x.high.u2 = -50\n"
      "boundary.x.high.theta = 273\n";
  const ModelConfig config = parse_config(text);
  REQUIRE(config.scales.has_value());
  CHECK(config.kn == doctest::Approx(0.2).epsilon(5e-3));
  CHECK(config.kn == ibex::compute_knudsen(*config.scales));
  CHECK(config.physical_output);
  // 1 mm domain over x0 = 1 mm, 273 K over theta0 = 273 K, 50 m/s over u0.
  CHECK(config.geometry.length[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(config.init.theta == doctest::Approx(1.0).epsilon(1e-14));
  const double u0 = config.scales->u0();
  CHECK(config.init.u[1] == doctest::Approx(50.0 / u0).epsilon(1e-14));
  CHECK(config.boundary.kind[0][1] == ibex::BoundaryKind::diffusive_wall);
  CHECK(config.boundary.wall[0][1].velocity[1] == doctest::Approx(-50.0 / u0).epsilon(1e-14));
  CHECK(config.boundary.wall[0][1].theta == doctest::Approx(1.0).epsilon(1e-14));

  // The five scales.* keys come as a block, and kn would be ambiguous.
  expect_key_error("problem = heating\nkernel.e = 0.5\nmodel.m0 = 2\nmodel.m = 2\n"
                   "time.t_end = 1\nheating.epsilon = 0\nscales.x0 = 1e-3\n",
                   "scales.");
  expect_key_error(text + "kn = 0.2\n", "kn");
  // Physical output without scales is meaningless.
  expect_key_error(kMinimalHeating + "output.units = physical\n", "output.units");
}

TEST_CASE("inhomogeneous config parses grids, centers and boundaries") {
  const ModelConfig config = parse_config(
      "problem = inhomogeneous\n"
      "kernel.e = 0.9\n"
      "model.m0 = 2\n"
      "model.m = 3\n"
      "time.t_end = 0.5\n"
      "grid.dims = 1\n"
      "grid.nx = 8\n"
      "grid.lx = 2.0\n"
      "center.u1 = 0.1\n"
      "center.t = 1.2\n"
      "boundary.x.low = wall\n"
      "boundary.x.low.u2 = 0.3\n"
      "boundary.x.low.theta = 1.1\n"
      "boundary.x.high = wall\n"
      "boundary.x.high.theta = 0.9\n");
  CHECK(config.geometry.dims == 1);
  CHECK(config.geometry.cells[0] == 8);
  CHECK(config.geometry.length[0] == 2.0);
  CHECK(config.convection_center.u_bar[0] == 0.1);
  CHECK(config.convection_center.t_bar == 1.2);
  CHECK(config.boundary.kind[0][0] == ibex::BoundaryKind::diffusive_wall);
  CHECK(config.boundary.kind[0][1] == ibex::BoundaryKind::diffusive_wall);
  CHECK(config.boundary.wall[0][0].velocity[1] == 0.3);
  CHECK(config.boundary.wall[0][0].theta == 1.1);
  CHECK(config.boundary.wall[0][1].theta == 0.9);

  // Walls must be paired with walls; mixing with periodic is rejected.
  CHECK_THROWS_AS(parse_config("problem = inhomogeneous\nkernel.e = 0.9\n"
                               "model.m0 = 2\nmodel.m = 2\ntime.t_end = 0.5\n"
                               "grid.nx = 8\nboundary.x.low = wall\n"
                               "boundary.x.low.theta = 1.0\n"),
                  ibex::ConfigError);
  // A wall needs its temperature.
  expect_key_error("problem = inhomogeneous\nkernel.e = 0.9\n"
                   "model.m0 = 2\nmodel.m = 2\ntime.t_end = 0.5\n"
                   "grid.nx = 8\nboundary.x.low = wall\nboundary.x.high = wall\n"
                   "boundary.x.high.theta = 1.0\n",
                   "boundary.x.low.theta");
}

TEST_CASE("initial state and uniform grid reproduce the configured background") {
  ModelConfig config = parse_config(
      "problem = inhomogeneous\n"
      "kernel.e = 1.0\n"
      "model.m0 = 2\n"
      "model.m = 2\n"
      "time.t_end = 0.1\n"
      "grid.nx = 4\n"
      "init.rho = 2.0\n"
      "init.u1 = 0.1\n"
      "init.theta = 1.3\n");
  const ibex::SpectralState state = ibex::build_initial_state(config);
  CHECK(state.coeffs[0] == 2.0);
  CHECK(state.coeffs.tail(state.coeffs.size() - 1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(state.center.u_bar[0] == 0.1);
  CHECK(state.center.t_bar == 1.3);

  const ibex::IndexSet set(config.m);
  const ibex::GridField grid = ibex::build_initial_grid(config, set);
  for (int i = 1; i < 4; ++i)
    CHECK((grid.cell(i) - grid.cell(0)).cwiseAbs().maxCoeff() == 0.0);
  const ibex::MacroState macro =
      ibex::macro_from_state({grid.cell(2), grid.center(), config.m}, set);
  CHECK(macro.rho == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(macro.u[0] == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(macro.theta == doctest::Approx(1.3).epsilon(1e-13));
}

TEST_CASE("sine2d initial grid modulates density cell by cell") {
  ModelConfig config = parse_config(
      "problem = inhomogeneous\n"
      "kernel.e = 0.9\n"
      "model.m0 = 2\n"
      "model.m = 2\n"
      "time.t_end = 0.1\n"
      "grid.dims = 2\n"
      "grid.nx = 4\n"
      "grid.ny = 4\n"
      "init.profile = sine2d\n"
      "init.amplitude = 0.3\n");
  const ibex::IndexSet set(config.m);
  const ibex::GridField grid = ibex::build_initial_grid(config, set);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const double sx = std::sin(two_pi * (i + 0.5) / 4.0);
      const double sy = std::sin(two_pi * (j + 0.5) / 4.0);
      const ibex::MacroState macro =
          ibex::macro_from_state({grid.cell(i, j), grid.center(), config.m}, set);
      CHECK(macro.rho == doctest::Approx(1.0 + 0.3 * sx * sy).epsilon(1e-12));
      CHECK(macro.theta == doctest::Approx(1.0).epsilon(1e-12));
    }

  expect_key_error("problem = inhomogeneous\nkernel.e = 0.9\nmodel.m0 = 2\nmodel.m = 2\n"
                   "time.t_end = 0.1\ngrid.nx = 4\ninit.profile = sine2d\n",
                   "init.profile");  // needs a 2D grid
  expect_key_error("problem = inhomogeneous\nkernel.e = 0.9\nmodel.m0 = 2\nmodel.m = 2\n"
                   "time.t_end = 0.1\ngrid.dims = 2\ngrid.nx = 4\ngrid.ny = 4\n"
                   "init.profile = sine2d\ninit.amplitude = 1.2\n",
                   "init.amplitude");
}

TEST_CASE("relaxation rates resolve from overrides or from the tensor") {
  const ibex::KernelSpec kernel = ibex::KernelSpec::maxwell(1.0 / (4.0 * std::numbers::pi), 0.5);
  const ibex::CollisionTensor tensor = ibex::assemble_tensor(3, kernel, 1e-14, 0);

  ModelConfig config;
  config.kernel = kernel;
  config.m0 = 2;
  config.m = 3;
  SUBCASE("explicit overrides win") {
    config.nu1_override = 0.7;
    config.nu2_override = 0.1;
    const ibex::CollisionModelParams params = ibex::resolve_model_params(config, tensor);
    CHECK(params.nu1 == 0.7);
    CHECK(params.nu2 == 0.1);
  }
  SUBCASE("auto rates come from the tensor spectrum and the restitution formula") {
    const ibex::CollisionModelParams params = ibex::resolve_model_params(config, tensor);
    CHECK(params.nu1 == doctest::Approx(ibex::estimate_nu1(tensor, 2)).epsilon(1e-15));
    CHECK(params.nu2 == doctest::Approx(ibex::nu2_default(0.5)).epsilon(1e-15));
    CHECK(params.nu1 > 0.0);
  }
  SUBCASE("rates are inert without a linear tail") {
    config.m = 3;
    config.m0 = 3;
    const ibex::CollisionModelParams params = ibex::resolve_model_params(config, tensor);
    CHECK(params.nu1 == 1.0);
    CHECK(params.nu2 == 0.0);
  }
}

TEST_CASE("coefficient cache round trips byte for byte") {
  const ibex::KernelSpec kernel = ibex::KernelSpec::hard_sphere(0.056269769759819128, 0.8);
  const ibex::CollisionTensor tensor = ibex::assemble_tensor(3, kernel, 1e-14, 0);
  const auto path_a = temp_file("ibex_cache_a.ibct");
  const auto path_b = temp_file("ibex_cache_b.ibct");

  ibex::cache_write(tensor, path_a);
  const ibex::CollisionTensor loaded = ibex::cache_read(path_a);
  CHECK(loaded.m() == tensor.m());
  CHECK(loaded.kernel().varpi == tensor.kernel().varpi);
  CHECK(loaded.kernel().e == tensor.kernel().e);
  CHECK(loaded.kernel().c_const == tensor.kernel().c_const);
  CHECK(loaded.drop_tol() == tensor.drop_tol());
  CHECK(loaded.center_t_bar() == 1.0);
  REQUIRE(loaded.nnz() == tensor.nnz());
  for (int a = 0; a < tensor.rows(); ++a) {
    REQUIRE(loaded.row_begin(a) == tensor.row_begin(a));
    for (std::int64_t i = tensor.row_begin(a); i < tensor.row_end(a); ++i) {
      CHECK(loaded.entry_lambda(i) == tensor.entry_lambda(i));
      CHECK(loaded.entry_kappa(i) == tensor.entry_kappa(i));
      CHECK(loaded.entry_value(i) == tensor.entry_value(i));  // bit-exact
    }
  }

  ibex::cache_write(loaded, path_b);
  CHECK(file_bytes(path_a) == file_bytes(path_b));
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("cache validation rejects mismatches and damaged files") {
  const ibex::KernelSpec kernel = ibex::KernelSpec::maxwell(1.0 / (4.0 * std::numbers::pi), 0.5);
  const ibex::CollisionTensor tensor = ibex::assemble_tensor(2, kernel, 1e-14, 0);

  CHECK_NOTHROW(ibex::ensure_cache_matches(tensor, kernel, 2));
  ibex::KernelSpec other = kernel;
  other.e = 0.6;
  CHECK_THROWS_AS(ibex::ensure_cache_matches(tensor, other, 2), ibex::CacheError);
  CHECK_THROWS_AS(ibex::ensure_cache_matches(tensor, kernel, 3), ibex::CacheError);

  CHECK_THROWS_AS(ibex::cache_read(temp_file("ibex_no_such_file.ibct")), ibex::CacheError);

  const auto garbage = temp_file("ibex_cache_garbage.ibct");
  {
    std::ofstream out(garbage, std::ios::binary);
    out << "definitely not a cache";
  }
  CHECK_THROWS_AS(ibex::cache_read(garbage), ibex::CacheError);
  std::filesystem::remove(garbage);

  const auto truncated = temp_file("ibex_cache_truncated.ibct");
  ibex::cache_write(tensor, truncated);
  const auto bytes = file_bytes(truncated);
  {
    std::ofstream out(truncated, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  }
  CHECK_THROWS_AS(ibex::cache_read(truncated), ibex::CacheError);
  std::filesystem::remove(truncated);
}

TEST_CASE("csv writers emit the pinned headers and full-precision rows") {
  const ibex::IndexSet set(2);
  ibex::HomogeneousSample sample;
  sample.t = 0.25;
  sample.macro.rho = 1.0;
  sample.macro.u = Eigen::Vector3d(0.125, 0.0, 0.0);
  sample.macro.theta = 0.8125;
  sample.macro.sigma = Eigen::Matrix3d::Zero();
  sample.macro.q = Eigen::Vector3d::Zero();

  std::ostringstream series_out;
  ibex::write_series(series_out, {sample});
  std::istringstream series_in(series_out.str());
  std::string header, row;
  REQUIRE(std::getline(series_in, header));
  CHECK(header ==
        "t,rho,u1,u2,u3,theta,sigma11,sigma12,sigma13,sigma22,sigma23,q1,q2,q3");
  REQUIRE(std::getline(series_in, row));
  const auto fields = split_csv(row);
  REQUIRE(fields.size() == 14);
  CHECK(fields[0] == "0.25");
  CHECK(std::stod(fields[1]) == 1.0);
  CHECK(std::stod(fields[2]) == 0.125);
  CHECK(std::stod(fields[5]) == 0.8125);

  ibex::GridGeometry geometry;
  geometry.dims = 1;
  geometry.cells = {3, 1};
  geometry.length = {1.5, 1.0};
  ibex::GridField grid(geometry, {}, 2);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(set.size());
  f[0] = 2.0;
  for (int i = 0; i < 3; ++i) grid.cell(i) = f;

  std::ostringstream grid_out;
  ibex::write_grid_snapshot(grid_out, grid, set, 0.5);
  std::istringstream grid_in(grid_out.str());
  REQUIRE(std::getline(grid_in, header));
  CHECK(header ==
        "t,x,rho,u1,u2,u3,theta,sigma11,sigma12,sigma13,sigma22,sigma23,q1,q2,q3");
  int rows = 0;
  double first_x = -1.0;
  while (std::getline(grid_in, row)) {
    const auto cells = split_csv(row);
    REQUIRE(cells.size() == 15);
    if (rows == 0) first_x = std::stod(cells[1]);
    CHECK(std::stod(cells[2]) == doctest::Approx(2.0).epsilon(1e-15));
    ++rows;
  }
  CHECK(rows == 3);
  CHECK(first_x == doctest::Approx(0.25).epsilon(1e-15));  // cell center of [0, 0.5]

  ibex::GridGeometry geo2 = geometry;
  geo2.dims = 2;
  geo2.cells = {2, 2};
  ibex::GridField grid2(geo2, {}, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) grid2.cell(i, j) = f;
  std::ostringstream grid2_out;
  ibex::write_grid_snapshot(grid2_out, grid2, set, 0.0);
  std::istringstream grid2_in(grid2_out.str());
  REQUIRE(std::getline(grid2_in, header));
  CHECK(header ==
        "t,x,y,rho,u1,u2,u3,theta,sigma11,sigma12,sigma13,sigma22,sigma23,q1,q2,q3");
}

TEST_CASE("physical output rescales columns back to SI units") {
  ibex::PhysicalScales scales;
  scales.x0 = 1e-3;
  scales.m0 = 6.63e-26;
  scales.theta0 = 273.0;
  scales.rho0 = 5.662e-4;
  scales.d_ref = 3.63e-10;

  ibex::HomogeneousSample sample;
  sample.t = 1.0;
  sample.macro.rho = 1.0;
  sample.macro.u = Eigen::Vector3d(0.5, 0.0, 0.0);
  sample.macro.theta = 1.0;
  sample.macro.sigma = Eigen::Matrix3d::Zero();
  sample.macro.q = Eigen::Vector3d::Zero();

  std::ostringstream out;
  ibex::write_series(out, {sample}, {true, scales});
  std::istringstream in(out.str());
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  const auto fields = split_csv(row);
  REQUIRE(fields.size() == 14);
  CHECK(std::stod(fields[0]) == doctest::Approx(scales.t0()).epsilon(1e-12));
  CHECK(std::stod(fields[1]) == doctest::Approx(5.662e-4).epsilon(1e-12));
  CHECK(std::stod(fields[2]) == doctest::Approx(0.5 * scales.u0()).epsilon(1e-12));
  CHECK(std::stod(fields[5]) == doctest::Approx(273.0).epsilon(1e-12));

  // Asking for physical units without usable scales must fail loudly.
  ibex::PhysicalScales broken;
  broken.theta0 = -1.0;
  std::ostringstream bad;
  CHECK_THROWS_AS(ibex::write_series(bad, {sample}, {true, broken}), ibex::ConfigError);
}
