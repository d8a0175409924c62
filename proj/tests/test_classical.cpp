#include <cmath>
#include <numbers>

#include "doctest.h"
#include "phaseflow/classical.hpp"
#include "phaseflow/ho_states.hpp"

using namespace phaseflow;

TEST_CASE("harmonic quarter period rotates (1,0) to (0,-1)") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  const Trajectory traj = integrate_trajectory(model, phase_point(1, 0), std::numbers::pi / 2, cfg);
  const PhasePoint end = traj.points.back();
  CHECK(end.q[0] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(std::abs(end.q[0]) < 1e-8);
  CHECK(end.p[0] == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("free particle travels in a straight line") {
  const auto model = HamiltonianModel::free_particle(1);
  FlowConfig cfg;
  cfg.dt = 1e-2;
  const Trajectory traj = integrate_trajectory(model, phase_point(0, 2), 3.0, cfg);
  const PhasePoint end = traj.points.back();
  CHECK(end.q[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(end.p[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quartic orbit conserves energy over a period") {
  const auto model = HamiltonianModel::quartic(1, 1);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.energy_tol = 1e-9;
  const double E0 = model.value(phase_point(1, 0));
  const double period = detect_period(model, phase_point(1, 0), cfg, 100.0);
  const Trajectory traj = integrate_trajectory(model, phase_point(1, 0), period, cfg);
  CHECK(std::abs(model.value(traj.points.back()) - E0) <= 1e-9);
}

TEST_CASE("RK4 endpoint error shrinks at 4th order") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  auto endpoint_error = [&](double dt) {
    FlowConfig cfg;
    cfg.dt = dt;
    const double t = 1.0;
    const Trajectory traj = integrate_trajectory(model, phase_point(1, 0), t, cfg);
    const PhasePoint end = traj.points.back();
    const double qe = std::cos(t), pe = -std::sin(t);
    return std::hypot(end.q[0] - qe, end.p[0] - pe);
  };
  const double e1 = endpoint_error(0.02);
  const double e2 = endpoint_error(0.01);
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("harmonic action over one full period cancels") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  const double T = 2.0 * std::numbers::pi;
  const Trajectory traj = integrate_trajectory(model, phase_point(2, 0), T, cfg);
  CHECK(std::abs(traj.action) <= 1e-8);
  CHECK(std::abs(accumulate_action(traj, model)) <= 1e-8);
}

TEST_CASE("free particle action is p^2 t / 2m") {
  const auto model = HamiltonianModel::free_particle(1);
  FlowConfig cfg;
  cfg.dt = 1e-2;
  const Trajectory traj = integrate_trajectory(model, phase_point(0, 2), 1.0, cfg);
  CHECK(traj.action == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(accumulate_action(traj, model) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("zero-momentum free trajectory accumulates no action") {
  const auto model = HamiltonianModel::free_particle(1);
  FlowConfig cfg;
  cfg.dt = 1e-2;
  const Trajectory traj = integrate_trajectory(model, phase_point(1, 0), 1.0, cfg);
  CHECK(std::abs(traj.action) <= 1e-15);
}

TEST_CASE("energy drift beyond tolerance raises EnergyDrift") {
  const auto model = HamiltonianModel::quartic(1, 1);
  FlowConfig cfg;
  cfg.dt = 0.5;  // far too coarse
  cfg.energy_tol = 1e-12;
  CHECK_THROWS_AS(integrate_trajectory(model, phase_point(2, 0), 10.0, cfg), Error);
}

TEST_CASE("accumulate_action needs at least three samples") {
  const auto model = HamiltonianModel::free_particle(1);
  Trajectory traj;
  traj.times = {0.0, 1.0};
  traj.points = {phase_point(0, 1), phase_point(1, 1)};
  CHECK_THROWS_AS(accumulate_action(traj, model), Error);
}

TEST_CASE("back and forward trajectory composition returns the start") {
  const auto model = HamiltonianModel::quartic(1, 0.7);
  const PhasePoint z0 = phase_point(0.8, 0.3);
  PhasePoint z = z0;
  for (int k = 0; k < 100; ++k) z = rk4_step(model, z, 1e-2);
  for (int k = 0; k < 100; ++k) z = rk4_step(model, z, -1e-2);
  CHECK(std::abs(z.q[0] - z0.q[0]) <= 1e-9);
  CHECK(std::abs(z.p[0] - z0.p[0]) <= 1e-9);
}

TEST_CASE("poisson bracket of f(H) with H vanishes") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 384, -8, 8, 384);
  PhaseField B(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    B[f] = std::exp(-model.value(grid.point(f)));
  }
  const PhaseField pb = poisson_bracket(B, model);
  CHECK(std::sqrt(l2_norm_sq(pb)) <= 1e-6 * std::sqrt(l2_norm_sq(B)));
}

TEST_CASE("canonical bracket {q, H} = p/m on interior points") {
  const auto model = HamiltonianModel::free_particle(2.0);
  const PhaseGrid grid = PhaseGrid::make1d(-4, 4, 65, -4, 4, 65);
  PhaseField B(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) B[f] = grid.point(f).q[0];
  const PhaseField pb = poisson_bracket(B, model);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (!grid.interior(f, 2)) continue;
    CHECK(pb[f].real() == doctest::Approx(grid.point(f).p[0] / 2.0).epsilon(1e-10));
    CHECK(pb[f].imag() == 0.0);
  }
}

TEST_CASE("|eta_1|^2 is constant along harmonic trajectories") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 512, -8, 8, 512);
  PhaseField B(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    B[f] = std::norm(ho_eigen_eta_value(1, 1, 1, 1, grid.point(f)));
  }
  const PhaseField pb = poisson_bracket(B, model);
  CHECK(std::sqrt(l2_norm_sq(pb)) <= 1e-6 * std::sqrt(l2_norm_sq(B)));
}

TEST_CASE("two-field poisson bracket recovers the canonical relation") {
  const PhaseGrid grid = PhaseGrid::make1d(-4, 4, 65, -4, 4, 65);
  PhaseField B(grid), C(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const PhasePoint z = grid.point(f);
    B[f] = z.q[0];
    C[f] = z.p[0] * z.p[0] / 2.0;
  }
  const PhaseField pb = poisson_bracket(B, C);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (!grid.interior(f, 2)) continue;
    CHECK(pb[f].real() == doctest::Approx(grid.point(f).p[0]).epsilon(1e-10));
  }
}

TEST_CASE("grid mismatch raises GridMismatch") {
  const PhaseGrid a = PhaseGrid::make1d(-4, 4, 65, -4, 4, 65);
  const PhaseGrid b = PhaseGrid::make1d(-4, 4, 64, -4, 4, 65);
  PhaseField B(a), C(b);
  CHECK_THROWS_AS(poisson_bracket(B, C), Error);
}

TEST_CASE("liouville keeps f(H) stationary over one period") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-6.5, 6.5, 256, -6.5, 6.5, 256);
  DensityField rho(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) rho[f] = std::exp(-model.value(grid.point(f)));
  const int n_steps = 256;
  const double dt = 2.0 * std::numbers::pi / n_steps;
  const DensityField evolved = liouville_step(rho, model, dt, n_steps);
  double max_diff = 0.0, peak = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    max_diff = std::max(max_diff, std::abs(evolved[f] - rho[f]));
    peak = std::max(peak, rho[f]);
  }
  CHECK(max_diff / peak <= 1e-6);
}

TEST_CASE("liouville transports a blob along the rotation") {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-7, 7, 224, -7, 7, 224);
  DensityField rho(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const PhasePoint z = grid.point(f);
    const double dq = z.q[0] - 1.0, dp = z.p[0];
    rho[f] = std::exp(-(dq * dq + dp * dp) / 0.5);
  }
  const DensityField evolved = liouville_step(rho, model, 1e-2, 157);  // t = pi/2
  // peak should sit at (0, -1)
  std::size_t arg_max = 0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (evolved[f] > evolved[arg_max]) arg_max = f;
  }
  const PhasePoint peak = grid.point(arg_max);
  CHECK(std::abs(peak.q[0] - 0.0) <= 2 * grid.dq());
  CHECK(std::abs(peak.p[0] + 1.0) <= 2 * grid.dp());
  // advective mass conservation
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    m0 += rho[f];
    m1 += evolved[f];
  }
  CHECK(m1 / m0 == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("outflow across the boundary raises OutflowDetected") {
  const auto model = HamiltonianModel::free_particle(1);
  const PhaseGrid grid = PhaseGrid::make1d(-4, 4, 96, 0.5, 3.5, 96);
  DensityField rho(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const PhasePoint z = grid.point(f);
    const double dq = z.q[0] - 2.5, dp = z.p[0] - 2.0;
    rho[f] = std::exp(-(dq * dq + dp * dp) / 0.08);
  }
  // everything drifts right at speed ~2; the blob must hit the q boundary
  CHECK_THROWS_AS(liouville_step(rho, model, 1e-2, 200), Error);
}
