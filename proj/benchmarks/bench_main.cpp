// Microbenchmarks for the hot paths: tensor assembly, the quadratic
// contraction, center projection, and the convection sweep.
#include <benchmark/benchmark.h>

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <random>

#include "ibex/coeff_engine.hpp"
#include "ibex/collision_model.hpp"
#include "ibex/grid.hpp"
#include "ibex/kernel.hpp"
#include "ibex/multi_index.hpp"
#include "ibex/projection.hpp"
#include "ibex/spectral_state.hpp"
#include "ibex/transport.hpp"

namespace {

const double kMaxwellConst = 1.0 / (4.0 * std::numbers::pi);

ibex::SpectralState random_state(int m, unsigned seed) {
  const ibex::IndexSet set(m);
  ibex::SpectralState state = ibex::SpectralState::zero(m, {{0.1, -0.05, 0.2}, 1.2});
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  state.coeffs[0] = 1.4;
  for (int rank = 1; rank < set.size(); ++rank)
    state.coeffs[rank] = 0.05 * gauss(rng) / (1.0 + set[rank].degree());
  return state;
}

void bm_assemble_tensor(benchmark::State& bench) {
  const int m = static_cast<int>(bench.range(0));
  const ibex::KernelSpec kernel = ibex::KernelSpec::hard_sphere(0.056269769759819128, 0.9);
  for (auto _ : bench) {
    const ibex::CollisionTensor tensor = ibex::assemble_tensor(m, kernel, 1e-14, 1);
    benchmark::DoNotOptimize(tensor.nnz());
  }
}
BENCHMARK(bm_assemble_tensor)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_quadratic_spectrum(benchmark::State& bench) {
  const int m = static_cast<int>(bench.range(0));
  const ibex::IndexSet set(m);
  const ibex::CollisionTensor tensor =
      ibex::assemble_tensor(m, ibex::KernelSpec::maxwell(kMaxwellConst, 0.8), 1e-14, 1);
  ibex::SpectralState state = random_state(m, 11u);
  state.center.t_bar = 1.0;  // tensor applies at the reference temperature
  for (auto _ : bench) {
    const Eigen::VectorXd q = ibex::quadratic_spectrum(state, tensor, m, set);
    benchmark::DoNotOptimize(q.sum());
  }
}
BENCHMARK(bm_quadratic_spectrum)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void bm_projection(benchmark::State& bench) {
  const int m = static_cast<int>(bench.range(0));
  const ibex::IndexSet set(m);
  const ibex::SpectralState state = random_state(m, 23u);
  const ibex::ExpansionCenter target{{-0.2, 0.3, 0.0}, 1.5};
  for (auto _ : bench) {
    const ibex::SpectralState moved = ibex::project(state, target, set);
    benchmark::DoNotOptimize(moved.coeffs.sum());
  }
}
BENCHMARK(bm_projection)->Arg(4)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void bm_convection_step(benchmark::State& bench) {
  const int m = static_cast<int>(bench.range(0));
  const ibex::IndexSet set(m);
  ibex::GridGeometry geometry;
  geometry.dims = 1;
  geometry.cells = {64, 1};
  geometry.length = {1.0, 1.0};
  ibex::GridField grid(geometry, {{0.2, 0.0, 0.0}, 1.0}, m);
  for (int i = 0; i < 64; ++i) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(set.size());
    f[0] = 1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * (i + 0.5) / 64.0);
    f[1] = 0.05 * std::cos(2.0 * std::numbers::pi * (i + 0.5) / 64.0);
    grid.cell(i) = f;
  }
  const double dt = 0.8 * ibex::cfl_dt(geometry, grid.center(), m, 0.3);
  const ibex::BoundarySpec periodic;
  for (auto _ : bench) {
    ibex::convection_step(grid, periodic, dt, set, 1);
    benchmark::DoNotOptimize(grid.cell(0)[0]);
  }
}
BENCHMARK(bm_convection_step)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMicrosecond);

void bm_weno_sweep(benchmark::State& bench) {
  const int cells = static_cast<int>(bench.range(0));
  std::vector<double> data(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i)
    data[static_cast<std::size_t>(i)] = std::sin(0.1 * i) + 0.01 * ((i * 2654435761u) % 17);
  for (auto _ : bench) {
    double acc = 0.0;
    for (int i = 1; i + 1 < cells; ++i)
      acc += ibex::weno_left_value(data[static_cast<std::size_t>(i) - 1],
                                   data[static_cast<std::size_t>(i)],
                                   data[static_cast<std::size_t>(i) + 1]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_weno_sweep)->Arg(256)->Arg(4096)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
