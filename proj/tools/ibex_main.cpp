// Command-line front end of the ibex spectral kinetic solver.
//
//   ibex precompute  assemble a collision tensor and cache it to disk
//   ibex run         run a configured problem, writing CSV output
//   ibex inspect     print header and sparsity statistics of a cache file
//   ibex validate    run the built-in invariant checks (PASS/FAIL lines)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "ibex/cache_io.hpp"
#include "ibex/coeff_engine.hpp"
#include "ibex/collision_model.hpp"
#include "ibex/collision_tensor.hpp"
#include "ibex/config.hpp"
#include "ibex/errors.hpp"
#include "ibex/hermite.hpp"
#include "ibex/macrostate.hpp"
#include "ibex/multi_index.hpp"
#include "ibex/projection.hpp"
#include "ibex/quadrature.hpp"
#include "ibex/snapshot.hpp"
#include "ibex/solver.hpp"
#include "ibex/spectral_state.hpp"
#include "ibex/transport.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string degree_label(const ibex::IndexSet& set, int rank) {
  const ibex::MultiIndex alpha = set[rank];
  return "(" + std::to_string(alpha[0]) + "," + std::to_string(alpha[1]) + "," +
         std::to_string(alpha[2]) + ")";
}

// ---------------------------------------------------------------------------
// precompute
// ---------------------------------------------------------------------------

int run_precompute(int m, double varpi, double e, double c_const, double drop_tol, int threads,
                   const std::filesystem::path& out) {
  const ibex::KernelSpec kernel{varpi, c_const, e};
  if (!kernel.valid())
    throw ibex::ConfigError("invalid kernel: need 0 < varpi <= 1, const > 0, e in [0, 1]");
  const auto start = Clock::now();
  const ibex::CollisionTensor tensor = ibex::assemble_tensor(m, kernel, drop_tol, threads);
  const double assemble_s = seconds_since(start);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  ibex::cache_write(tensor, out);
  std::cout << "assembled m=" << m << " varpi=" << varpi << " e=" << e << " const=" << c_const
            << "\n"
            << "nonzeros: " << tensor.nnz() << " over " << tensor.rows() << " rows\n"
            << "assembly time: " << assemble_s << " s\n"
            << "cache written: " << out.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

ibex::CollisionTensor obtain_tensor(const ibex::ModelConfig& config,
                                    const std::filesystem::path& cache, int threads) {
  if (!cache.empty() && std::filesystem::exists(cache)) {
    ibex::CollisionTensor tensor = ibex::cache_read(cache);
    ibex::ensure_cache_matches(tensor, config.kernel, config.m0);
    std::cout << "tensor: loaded from " << cache.string() << " (m=" << tensor.m()
              << ", nnz=" << tensor.nnz() << ")\n";
    return tensor;
  }
  const auto start = Clock::now();
  ibex::CollisionTensor tensor =
      ibex::assemble_tensor(config.m0, config.kernel, config.drop_tol, threads);
  std::cout << "tensor: assembled m=" << config.m0 << " (nnz=" << tensor.nnz() << ", "
            << seconds_since(start) << " s)\n";
  if (!cache.empty()) {
    if (cache.has_parent_path()) std::filesystem::create_directories(cache.parent_path());
    ibex::cache_write(tensor, cache);
    std::cout << "tensor: cache written to " << cache.string() << "\n";
  }
  return tensor;
}

void write_series_file(const std::filesystem::path& path,
                       const std::vector<ibex::HomogeneousSample>& series,
                       const ibex::OutputScaling& scaling) {
  std::ofstream out(path);
  if (!out) throw ibex::Error("cannot open output file '" + path.string() + "'");
  ibex::write_series(out, series, scaling);
  std::cout << "wrote " << path.string() << " (" << series.size() << " samples)\n";
}

int run_problem(const std::filesystem::path& config_path, const std::filesystem::path& cache,
                const std::filesystem::path& out_dir, int threads_override) {
  ibex::ModelConfig config = ibex::load_config(config_path);
  if (threads_override >= 0) config.threads = threads_override;
  std::filesystem::create_directories(out_dir);

  const ibex::CollisionTensor tensor = obtain_tensor(config, cache, config.threads);
  ibex::SolverParams params = ibex::solver_params_from(config);
  params.model = ibex::resolve_model_params(config, tensor);
  if (config.m0 < config.m)
    std::cout << "rates: nu1=" << params.model.nu1 << " nu2=" << params.model.nu2 << "\n";

  const ibex::IndexSet set(config.m);
  ibex::OutputScaling scaling;
  if (config.physical_output && config.scales) scaling = {true, *config.scales};

  const auto start = Clock::now();
  switch (config.problem) {
    case ibex::ProblemKind::heating: {
      const ibex::SpectralState state = ibex::build_initial_state(config);
      const auto series =
          ibex::run_heating(state, tensor, params, config.heating_epsilon, set);
      write_series_file(out_dir / "series.csv", series, scaling);
      const ibex::MacroState& last = series.back().macro;
      std::cout << "final t=" << series.back().t << " theta=" << last.theta << "\n";
      if (config.kernel.varpi == 1.0) {
        const double exact = ibex::heating_exact(config.init.theta, config.heating_epsilon,
                                                 config.kernel.e, series.back().t);
        std::cout << "exact theta=" << exact
                  << " (rel err=" << std::abs(last.theta - exact) / exact << ")\n";
      }
      break;
    }
    case ibex::ProblemKind::haff: {
      const ibex::SpectralState state = ibex::build_initial_state(config);
      const auto series = ibex::run_haff(state, tensor, params, set);
      write_series_file(out_dir / "series.csv", series, scaling);
      std::vector<double> t, theta;
      t.reserve(series.size());
      theta.reserve(series.size());
      for (const auto& sample : series) {
        t.push_back(sample.t);
        theta.push_back(sample.macro.theta);
      }
      const ibex::HaffFit fit = ibex::haff_fit(t, theta);
      std::cout << "final t=" << t.back() << " theta=" << theta.back() << "\n"
                << "cooling fit: gamma0=" << fit.gamma0 << " r2=" << fit.r_squared
                << (fit.monotone ? "" : " [non-monotone series]") << "\n";
      break;
    }
    case ibex::ProblemKind::inhomogeneous: {
      ibex::GridField grid = ibex::build_initial_grid(config, set);
      const double mass0 = grid.integrated_coefficient(0);
      int snapshot_id = 0;
      const auto on_snapshot = [&](double t, const ibex::GridField& g) {
        char name[32];
        std::snprintf(name, sizeof(name), "snapshot_%04d.csv", snapshot_id++);
        const std::filesystem::path path = out_dir / name;
        std::ofstream out(path);
        if (!out) throw ibex::Error("cannot open output file '" + path.string() + "'");
        ibex::write_grid_snapshot(out, g, set, t, scaling);
        std::cout << "wrote " << path.string() << " (t=" << t << ")\n";
      };
      ibex::run_inhomogeneous(grid, config.boundary, tensor, params, set, on_snapshot);
      const double mass1 = grid.integrated_coefficient(0);
      std::cout << "mass: initial=" << mass0 << " final=" << mass1
                << " (drift=" << std::abs(mass1 - mass0) / std::abs(mass0) << ")\n";
      break;
    }
  }
  std::cout << "run time: " << seconds_since(start) << " s\n";
  return 0;
}

// ---------------------------------------------------------------------------
// inspect
// ---------------------------------------------------------------------------

int run_inspect(const std::filesystem::path& cache) {
  const ibex::CollisionTensor tensor = ibex::cache_read(cache);
  const ibex::IndexSet set(tensor.m());
  const int n = set.size();

  std::cout << "cache: " << cache.string() << "\n"
            << "max degree: " << tensor.m() << " (" << n << " basis functions)\n"
            << "kernel: varpi=" << tensor.kernel().varpi << " e=" << tensor.kernel().e
            << " const=" << tensor.kernel().c_const << "\n"
            << "drop tolerance: " << tensor.drop_tol() << "\n"
            << "nonzeros: " << tensor.nnz() << "\n";

  const double dense = static_cast<double>(n) * n * n;
  std::cout << "fill: " << static_cast<double>(tensor.nnz()) / dense << " of dense " << n << "^3\n";

  // Per-degree row population and basic structure checks.
  std::map<int, std::int64_t> per_degree;
  double max_conservation = 0.0;
  std::int64_t maxwell_violations = 0;
  double max_violation = 0.0;
  double max_abs = 0.0;
  for (int a = 0; a < tensor.rows(); ++a) {
    const int deg = set[a].degree();
    per_degree[deg] += tensor.row_end(a) - tensor.row_begin(a);
    for (std::int64_t i = tensor.row_begin(a); i < tensor.row_end(a); ++i) {
      const double v = std::abs(tensor.entry_value(i));
      max_abs = std::max(max_abs, v);
      if (deg <= 1) max_conservation = std::max(max_conservation, v);
      if (tensor.kernel().varpi == 1.0) {
        const int dl = set[static_cast<int>(tensor.entry_lambda(i))].degree();
        const int dk = set[static_cast<int>(tensor.entry_kappa(i))].degree();
        if (deg < dl + dk) {
          ++maxwell_violations;
          max_violation = std::max(max_violation, v);
        }
      }
    }
  }
  std::cout << "largest magnitude: " << max_abs << "\n";
  std::cout << "entries by output degree:";
  for (const auto& [deg, count] : per_degree) std::cout << " " << deg << ":" << count;
  std::cout << "\n";
  std::cout << "conservation rows (degree <= 1) max |A|: " << max_conservation << "\n";
  if (tensor.kernel().varpi == 1.0)
    std::cout << "maxwell degree-sparsity violations (|alpha| < |lambda|+|kappa|): "
              << maxwell_violations << " (largest " << max_violation << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int run_validate() {
  int failures = 0;
  const auto report = [&failures](const std::string& name, bool ok, double detail) {
    if (ok) {
      std::cout << "PASS " << name << "\n";
    } else {
      std::cout << "FAIL " << name << " (measured " << detail << ")\n";
      ++failures;
    }
  };

  {
    using ibex::MultiIndex;
    const bool ok = ibex::rank_of(MultiIndex{0, 0, 0}) == 0 &&
                    ibex::rank_of(MultiIndex{1, 0, 0}) == 1 &&
                    ibex::rank_of(MultiIndex{0, 1, 0}) == 2 &&
                    ibex::rank_of(MultiIndex{0, 0, 1}) == 3 &&
                    ibex::rank_of(MultiIndex{2, 0, 0}) == 4 && ibex::basis_count(3) == 20;
    report("index-ordering", ok, 0.0);
  }
  {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 32; ++trial) {
      const double x = dist(rng);
      const double lhs = ibex::hermite_eval_1d(5, x);
      const double rhs = x * ibex::hermite_eval_1d(4, x) - 4.0 * ibex::hermite_eval_1d(3, x);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    report("hermite-recurrence", worst <= 1e-12, worst);
  }
  {
    const ibex::Quadrature1D q = ibex::gauss_hermite(20);
    double sum = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double h4 = ibex::hermite_eval_1d(4, q.nodes[i]);
      sum += q.weights[i] * h4 * h4;
    }
    const double err = std::abs(sum - 24.0) / 24.0;  // 4! = 24
    report("hermite-orthogonality", err <= 1e-10, err);
  }
  {
    const ibex::IndexSet set(4);
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    ibex::SpectralState state = ibex::SpectralState::zero(4, {{0.2, -0.1, 0.3}, 1.4});
    for (int r = 0; r < set.size(); ++r) state.coeffs[r] = dist(rng);
    const ibex::ExpansionCenter other{{-0.3, 0.4, 0.1}, 0.8};
    const ibex::SpectralState back =
        ibex::project(ibex::project(state, other, set), state.center, set);
    const double err = (back.coeffs - state.coeffs).cwiseAbs().maxCoeff();
    report("projection-roundtrip", err <= 1e-12, err);
  }
  {
    const ibex::KernelSpec kernel = ibex::KernelSpec::maxwell(1.0 / (4.0 * std::numbers::pi), 0.5);
    const ibex::CollisionTensor tensor = ibex::assemble_tensor(4, kernel, 1e-14, 0);
    const ibex::IndexSet set(4);
    double conservation = 0.0;
    for (int a = 0; a < 4; ++a)  // degree <= 1 rows
      for (std::int64_t i = tensor.row_begin(a); i < tensor.row_end(a); ++i)
        conservation = std::max(conservation, std::abs(tensor.entry_value(i)));
    report("conservation-rows", conservation <= 1e-12, conservation);

    double trace = 0.0;
    for (int d = 0; d < 3; ++d)
      trace += tensor.value_at(set.rank(ibex::unit_index(d).plus(d)), 0, 0);
    const double target = -3.0 * (1.0 - 0.5 * 0.5) / 8.0;
    const double err = std::abs(trace - target) / std::abs(target);
    report("cooling-identity", err <= 1e-12, err);
  }
  {
    const ibex::IndexSet set(3);
    ibex::SpectralState state =
        ibex::SpectralState::maxwellian(2.0, {{0.3, -0.1, 0.2}, 1.7}, 3);
    const ibex::MacroState macro = ibex::macro_from_state(state, set);
    double err = std::abs(macro.rho - 2.0) + std::abs(macro.theta - 1.7) +
                 (macro.u - Eigen::Vector3d(0.3, -0.1, 0.2)).cwiseAbs().maxCoeff() +
                 macro.sigma.cwiseAbs().maxCoeff() + macro.q.cwiseAbs().maxCoeff();
    report("macro-recovery", err <= 1e-12, err);
  }
  {
    const double left = ibex::weno_left_value(1.0, 2.0, 3.0);
    const double right = ibex::weno_right_value(0.0, 0.0, 1.0);
    const bool ok = std::abs(left - 2.5) <= 1e-9 && std::abs(right) <= 1e-5;
    report("weno-reconstruction", ok, std::abs(left - 2.5) + std::abs(right));
  }
  {
    double worst = 0.0;
    for (const double u : {-1.5, -0.2, 0.0, 0.4, 2.0})
      for (const double theta : {0.5, 1.0, 2.5}) {
        const double diff =
            ibex::half_flux_positive(u, theta) - ibex::half_flux_negative(u, theta);
        worst = std::max(worst, std::abs(diff - u));
      }
    report("wall-flux-balance", worst <= 1e-12, worst);
  }

  std::cout << (failures == 0 ? "all checks passed" : "checks failed") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ibex - spectral solver for the inelastic Boltzmann equation"};
  app.require_subcommand(1);

  // precompute
  auto* pre = app.add_subcommand("precompute", "assemble a collision tensor and cache it");
  int pre_m = 4;
  double pre_varpi = 1.0;
  double pre_e = 1.0;
  double pre_const = 1.0 / (4.0 * std::numbers::pi);
  double pre_drop = 1e-14;
  int pre_threads = 0;
  std::filesystem::path pre_out;
  pre->add_option("--m", pre_m, "maximum basis degree")->required();
  pre->add_option("--varpi", pre_varpi, "kernel exponent (1 = Maxwell, 0.5 = hard sphere)");
  pre->add_option("--e", pre_e, "restitution coefficient")->required();
  pre->add_option("--const", pre_const, "kernel prefactor");
  pre->add_option("--drop-tol", pre_drop, "magnitude below which entries are dropped");
  pre->add_option("--threads", pre_threads, "worker threads (0 = hardware)");
  pre->add_option("--out", pre_out, "cache file to write")->required();

  // run
  auto* run = app.add_subcommand("run", "run a configured problem");
  std::filesystem::path run_config, run_cache, run_out = ".";
  int run_threads = -1;
  run->add_option("--config", run_config, "problem description file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--cache", run_cache, "tensor cache (read if present, else written)");
  run->add_option("--out-dir", run_out, "directory for CSV output");
  run->add_option("--threads", run_threads, "override the config's thread count");

  // inspect
  auto* inspect = app.add_subcommand("inspect", "print cache header and sparsity statistics");
  std::filesystem::path inspect_cache;
  inspect->add_option("--cache", inspect_cache, "cache file to inspect")
      ->required()
      ->check(CLI::ExistingFile);

  // validate
  app.add_subcommand("validate", "run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pre->parsed())
      return run_precompute(pre_m, pre_varpi, pre_e, pre_const, pre_drop, pre_threads, pre_out);
    if (run->parsed()) return run_problem(run_config, run_cache, run_out, run_threads);
    if (inspect->parsed()) return run_inspect(inspect_cache);
    return run_validate();
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
