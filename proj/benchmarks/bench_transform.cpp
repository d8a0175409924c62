#include <benchmark/benchmark.h>

#include "phaseflow/ho_states.hpp"
#include "phaseflow/transform.hpp"

using namespace phaseflow;

namespace {

PositionWavefunction test_state(int nx) {
  return ho_eigenstate(2, 1, 1, 1, PositionGrid::make1d(-12, 12, nx));
}

}  // namespace

static void LiftDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PositionWavefunction psi = test_state(1024);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, n, -7.5, 7.5, n);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  for (auto _ : state) {
    PhaseField eta = lift(psi, fam, grid, QuadratureMethod::Direct);
    benchmark::DoNotOptimize(eta.values().data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(LiftDirect)->Arg(64)->Arg(128)->Arg(192);

static void LiftSeparable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PositionWavefunction psi = test_state(1024);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, n, -7.5, 7.5, n);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  for (auto _ : state) {
    PhaseField eta = lift(psi, fam, grid, QuadratureMethod::Separable);
    benchmark::DoNotOptimize(eta.values().data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(LiftSeparable)->Arg(64)->Arg(128)->Arg(192);

static void ProjectDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PositionWavefunction psi = test_state(1024);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, n, -7.5, 7.5, n);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PhaseField eta = lift(psi, fam, grid);
  const PositionGrid xg = PositionGrid::make1d(-12, 12, 1024);
  for (auto _ : state) {
    PositionWavefunction back = project(eta, fam, xg);
    benchmark::DoNotOptimize(back.values().data());
  }
}
BENCHMARK(ProjectDirect)->Arg(64)->Arg(128)->Arg(192);

static void ProjectorQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PositionWavefunction psi = test_state(512);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, n, -7.5, 7.5, n);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PhaseField eta = lift(psi, fam, grid);
  for (auto _ : state) {
    PhaseField projected = project_q(eta, fam);
    benchmark::DoNotOptimize(projected.values().data());
  }
}
BENCHMARK(ProjectorQ)->Arg(64)->Arg(96)->Arg(128);

BENCHMARK_MAIN();
