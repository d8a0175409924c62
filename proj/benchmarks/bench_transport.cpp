#include <benchmark/benchmark.h>

#include "phaseflow/ho_states.hpp"
#include "phaseflow/se_dynamics.hpp"
#include "phaseflow/transport.hpp"

using namespace phaseflow;

static void TransportStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, n, -8, 8, n);
  const TransportPlan plan(grid, model, 1e-3);
  PhaseField a = ho_eigen_eta(0, 1, 1, 1, grid);
  PhaseField b(grid);
  for (auto _ : state) {
    plan.advect(a, b);
    std::swap(a, b);
    benchmark::DoNotOptimize(a.values().data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(TransportStep)->Arg(128)->Arg(256)->Arg(384)->Arg(512);

static void TransportPlanBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, n, -8, 8, n);
  for (auto _ : state) {
    TransportPlan plan(grid, model, 1e-3);
    benchmark::DoNotOptimize(&plan);
  }
}
BENCHMARK(TransportPlanBuild)->Arg(128)->Arg(256);

static void LiouvillePeriod(benchmark::State& state) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-6.5, 6.5, 192, -6.5, 6.5, 192);
  DensityField rho(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    rho[f] = std::exp(-model.value(grid.point(f)));
  }
  for (auto _ : state) {
    DensityField out = liouville_step(rho, model, 2 * 3.14159265358979 / 128, 128);
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(LiouvillePeriod);

static void SecondOrderOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-9, 9, n, -9, 9, n);
  const PhaseField eta = ho_eigen_eta(1, 1, 1, 1, grid);
  for (auto _ : state) {
    PhaseField rhs = se_rhs_order2(eta, model);
    benchmark::DoNotOptimize(rhs.values().data());
  }
}
BENCHMARK(SecondOrderOperator)->Arg(256)->Arg(512);
