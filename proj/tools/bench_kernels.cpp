// Serial vs parallel timings for the grid kernels.  The parallel path must
// win on dense grids; the serial path is the reference the tests compare
// against, so both stay exercised here.

#include <benchmark/benchmark.h>

#include "chf/grid.hpp"
#include "chf/kummer.hpp"
#include "chf/schrodinger.hpp"

using namespace chf;

namespace {

void bm_kernel_grid(benchmark::State& state, grid::Exec ex) {
  const KernelElement f{{-2.5, 0.7}, 0.6, 0.4};
  const auto xs = grid::linspace(0.25, 40.0, 4096);
  for (auto _ : state) {
    auto ys = grid::map_grid(xs, [&](double x) { return eval_kernel(f, x); }, ex);
    benchmark::DoNotOptimize(ys.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}

void bm_kernel_residual_grid(benchmark::State& state, grid::Exec ex) {
  const KernelElement f{{1.3, 0.4}, 1.0, 0.5};
  const auto xs = grid::linspace(0.25, 20.0, 2048);
  for (auto _ : state) {
    auto ys = grid::map_grid(
        xs, [&](double x) { return kernel_residual(f, x); }, ex);
    benchmark::DoNotOptimize(ys.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}

void bm_schrodinger_residual(benchmark::State& state, grid::Exec ex) {
  const auto w = qm::bound_state(qm::oscillator_radial(3, 1), 2);
  for (auto _ : state) {
    auto rep = qm::schrodinger_residual(
        [&](double y) { return w.eval(y); }, w.pot, w.energy, w.y_lo, w.y_hi,
        2001, 1e-3, ex);
    benchmark::DoNotOptimize(rep.max_residual);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_kernel_grid, serial, grid::Exec::serial);
BENCHMARK_CAPTURE(bm_kernel_grid, parallel, grid::Exec::parallel);
BENCHMARK_CAPTURE(bm_kernel_residual_grid, serial, grid::Exec::serial);
BENCHMARK_CAPTURE(bm_kernel_residual_grid, parallel, grid::Exec::parallel);
BENCHMARK_CAPTURE(bm_schrodinger_residual, serial, grid::Exec::serial);
BENCHMARK_CAPTURE(bm_schrodinger_residual, parallel, grid::Exec::parallel);

BENCHMARK_MAIN();
