#include "validate.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "phaseflow/classical.hpp"
#include "phaseflow/finite_diff.hpp"
#include "phaseflow/hermite.hpp"
#include "phaseflow/ho_states.hpp"
#include "phaseflow/quantization.hpp"
#include "phaseflow/reference.hpp"
#include "phaseflow/se_dynamics.hpp"
#include "phaseflow/transform.hpp"

namespace phaseflow::cli {

namespace {

using Check = std::pair<std::string, std::function<bool(unsigned)>>;

const double kPi = std::numbers::pi;

double l2(const PhaseField& f) { return std::sqrt(l2_norm_sq(f)); }

// ---- phase-core ----

bool check_hermite(unsigned) {
  if (hermite(1, 3.0) != 6.0) return false;
  if (std::abs(hermite(3, 1.0) + 4.0) > 1e-12) return false;
  // Gaussian-Hermite integral identity at a complex argument
  const Complex z{1.0, 0.5};
  const double alpha = 0.9;
  for (int n : {2, 5}) {
    const int N = 3001;
    Complex sum{0, 0};
    for (int k = 0; k < N; ++k) {
      const double x = z.real() - 12.0 + k * 24.0 / (N - 1);
      const double w = (k == 0 || k == N - 1) ? 0.5 : 1.0;
      const Complex d = x - z;
      sum += w * std::exp(-d * d) * hermite(n, Complex{alpha * x, 0.0});
    }
    sum *= 24.0 / (N - 1);
    const Complex rhs = std::sqrt(kPi) * std::pow(1.0 - alpha * alpha, 0.5 * n) *
                        hermite(n, alpha * z / std::sqrt(1.0 - alpha * alpha));
    if (std::abs(sum - rhs) > 1e-8 * std::abs(rhs)) return false;
  }
  return true;
}

bool check_model_derivatives(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& model :
       {HamiltonianModel::harmonic(1.2, 0.8), HamiltonianModel::quartic(1, 1),
        HamiltonianModel::anisotropic2d(1, 1, std::numbers::sqrt2)}) {
    for (int trial = 0; trial < 8; ++trial) {
      PhasePoint z{};
      for (int i = 0; i < model.dim(); ++i) {
        z.q[i] = u(rng);
        z.p[i] = u(rng);
      }
      const double h = 1e-5;
      for (int i = 0; i < model.dim(); ++i) {
        PhasePoint zp = z, zm = z;
        zp.q[i] += h;
        zm.q[i] -= h;
        const double fd = (model.value(zp) - model.value(zm)) / (2 * h);
        if (std::abs(model.grad_q(z)[i] - fd) > 1e-6 * std::max(1.0, std::abs(fd))) return false;
      }
    }
  }
  return true;
}

bool check_eta_norm(unsigned) {
  const PhaseGrid grid = PhaseGrid::make1d(-9, 9, 256, -9, 9, 256);
  for (int n : {0, 2}) {
    const PhaseField eta = ho_eigen_eta(n, 1, 1, 1, grid);
    if (std::abs(phase_norm_sq(eta, 1.0) - 1.0) > 1e-6) return false;
  }
  return true;
}

bool check_eta_modulus_on_shell(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> th(0, 2 * kPi);
  for (int trial = 0; trial < 16; ++trial) {
    const double r = 0.5 + 0.2 * trial;
    const double a = th(rng), b = th(rng);
    const double m1 =
        std::abs(ho_eigen_eta_value(2, 1, 1, 1, phase_point(r * std::cos(a), r * std::sin(a))));
    const double m2 =
        std::abs(ho_eigen_eta_value(2, 1, 1, 1, phase_point(r * std::cos(b), r * std::sin(b))));
    if (std::abs(m1 - m2) > 1e-10 * std::max(m1, 1e-30)) return false;
  }
  return true;
}

// ---- transform ----

bool check_kernel(unsigned seed) {
  WavepacketFamily fam;
  fam.sigma = 0.8;
  const PositionGrid xg = PositionGrid::make1d(-13, 13, 1001);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 4; ++trial) {
    const PhasePoint a = phase_point(u(rng), u(rng));
    const PhasePoint b = phase_point(u(rng), u(rng));
    const Complex overlap = position_inner(make_wavepacket(fam, a, xg), make_wavepacket(fam, b, xg));
    if (std::abs(overlap - kernel(fam, a, b, 1)) > 1e-9) return false;
    if (std::abs(kernel(fam, a, b, 1) - std::conj(kernel(fam, b, a, 1))) > 1e-14) return false;
  }
  return true;
}

bool check_round_trip(unsigned) {
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PositionGrid xg = PositionGrid::make1d(-12, 12, 512);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, 128, -7.5, 7.5, 128);
  for (int n : {0, 1}) {
    const PositionWavefunction psi = ho_eigenstate(n, 1, 1, 1, xg);
    const PositionWavefunction back = project(lift(psi, fam, grid), fam, xg);
    double err = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) err += std::norm(back[k] - psi[k]);
    if (std::sqrt(err * xg.cell_measure()) > 1e-6) return false;
  }
  return true;
}

bool check_lift_matches_eta(unsigned) {
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PositionGrid xg = PositionGrid::make1d(-12, 12, 512);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, 96, -7.5, 7.5, 96);
  const PhaseField eta = lift(ho_eigenstate(1, 1, 1, 1, xg), fam, grid);
  double num = 0.0, den = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Complex ref = ho_eigen_eta_value(1, 1, 1, 1, grid.point(f));
    num += std::norm(eta[f] - ref);
    den += std::norm(ref);
  }
  return std::sqrt(num / den) <= 1e-5;
}

bool check_projector_idempotent(unsigned) {
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-9, 9, 128, -9, 9, 128);
  PhaseField eta(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const PhasePoint z = grid.point(f);
    const double d1 = (z.q[0] - 0.4) * (z.q[0] - 0.4) + z.p[0] * z.p[0];
    const double d2 = z.q[0] * z.q[0] + (z.p[0] + 0.3) * (z.p[0] + 0.3);
    eta[f] = std::exp(-d1 / 2.0) + Complex{0.0, 0.5} * std::exp(-d2 / 2.0);
  }
  const PhaseField p1 = project_q(eta, fam);
  const PhaseField p2 = project_q(p1, fam);
  double num = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) num += std::norm(p2[f] - p1[f]);
  return std::sqrt(num) <= 1e-6 * l2(eta) / std::sqrt(grid.cell_measure());
}

bool check_ladder(unsigned) {
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PositionGrid xg = PositionGrid::make1d(-12, 12, 512);
  const PositionWavefunction psi = ho_eigenstate(1, 1, 1, 1, xg);
  const PhaseGrid grid = PhaseGrid::make1d(-6, 6, 97, -6, 6, 97);
  const PhaseField eta = lift(psi, fam, grid);
  const auto dp = axis_derivative(grid, eta.values(), 1);
  const std::size_t f = 40 * 97 + 52;
  const PhasePoint z = grid.point(f);
  Complex I{0, 0};
  for (std::size_t k = 0; k < xg.size(); ++k) {
    const Complex u = wavepacket_value(fam, z, xg.point(k), 1);
    I += (xg.point(k)[0] - z.q[0]) * std::conj(u) * psi[k] * trapezoid_weight(xg, k);
  }
  I *= xg.cell_measure();
  return std::abs(I - Complex{0, 1} * dp[f]) <= 1e-4 * std::max(1.0, std::abs(I));
}

// ---- classical ----

bool check_flow(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  const Trajectory traj = integrate_trajectory(model, phase_point(1, 0), kPi / 2, cfg);
  const PhasePoint end = traj.points.back();
  if (std::abs(end.q[0]) > 1e-8 || std::abs(end.p[0] + 1.0) > 1e-8) return false;
  // 4th-order convergence
  auto err = [&](double dt) {
    FlowConfig c;
    c.dt = dt;
    const auto t = integrate_trajectory(model, phase_point(1, 0), 1.0, c);
    return std::hypot(t.points.back().q[0] - std::cos(1.0), t.points.back().p[0] + std::sin(1.0));
  };
  return err(0.02) / err(0.01) >= 8.0;
}

bool check_action(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  const Trajectory traj = integrate_trajectory(model, phase_point(2, 0), 2 * kPi, cfg);
  if (std::abs(traj.action) > 1e-8) return false;
  const auto free = HamiltonianModel::free_particle(1);
  const Trajectory ft = integrate_trajectory(free, phase_point(0, 2), 1.0, cfg);
  return std::abs(accumulate_action(ft, free) - 2.0) <= 1e-10;
}

bool check_bracket(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 384, -8, 8, 384);
  PhaseField B(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) B[f] = std::exp(-model.value(grid.point(f)));
  return l2(poisson_bracket(B, model)) <= 1e-6 * l2(B);
}

bool check_liouville_stationary(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-6.5, 6.5, 256, -6.5, 6.5, 256);
  DensityField rho(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) rho[f] = std::exp(-model.value(grid.point(f)));
  const DensityField out = liouville_step(rho, model, 2 * kPi / 128, 128);
  double max_diff = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    max_diff = std::max(max_diff, std::abs(out[f] - rho[f]));
  }
  return max_diff <= 1e-6;
}

// ---- se ----

bool check_stationary_eta0(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 384, -8, 8, 384);
  const PhaseField eta0 = ho_eigen_eta(0, 1, 1, 1, grid);
  FlowConfig cfg;
  cfg.dt = 2 * kPi / 1024;
  const PhaseField out = se_evolve(eta0, model, 0.25, cfg);
  double num = 0.0, den = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    num += std::norm(out[f] - eta0[f]);
    den += std::norm(eta0[f]);
  }
  return std::sqrt(num / den) <= 1e-6;
}

bool check_tise(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-10, 10, 512, -10, 10, 512);
  for (int n : {0, 1, 2}) {
    const PhaseField eta = ho_eigen_eta(n, 1, 1, 1, grid);
    if (tise_residual(eta, n, model, 1).relative_norm > 1e-5) return false;
    if (std::abs(tise_residual(eta, n + 0.5, model, 1).relative_norm - 0.5) > 1e-5) return false;
    if (tise_residual(eta, n + 0.5, model, 2).relative_norm > 1e-5) return false;
  }
  return true;
}

bool check_gauge_moduli(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, 224, -7.5, 7.5, 224);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  PhaseField eta0(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    eta0[f] = kernel(fam, grid.point(f), phase_point(1, 0), 1);
  }
  FlowConfig cfg;
  cfg.dt = 2 * kPi / 512;
  GaugeSpec kvn;
  kvn.kind = GaugeKind::Kvn;
  const PhaseField a = se_evolve(eta0, model, kPi / 2, cfg);
  const PhaseField b = se_evolve(eta0, model, kPi / 2, cfg, kvn);
  double max_diff = 0.0, peak = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    peak = std::max(peak, std::abs(a[f]));
    max_diff = std::max(max_diff, std::abs(std::abs(a[f]) - std::abs(b[f])));
  }
  return max_diff <= 1e-8 * peak;
}

bool check_amplitude_phase(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 384, -8, 8, 384);
  const PhaseField eta = ho_eigen_eta(0, 1, 1, 1, grid);
  const auto [ra, rb] = amplitude_phase_residuals(eta, 0.0, model);
  return ra.relative_norm <= 1e-5 && rb.relative_norm <= 1e-5;
}

// ---- quantization ----

bool check_bohr_sommerfeld(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const SpectrumResult spec = bohr_sommerfeld_levels(model, 6);
  for (int n = 0; n <= 6; ++n) {
    if (std::abs(spec.levels[n].energy - n) > 1e-10) return false;
  }
  const auto aniso = HamiltonianModel::anisotropic2d(1, 1, std::numbers::sqrt2);
  const SpectrumResult spec2 = bohr_sommerfeld_levels(aniso, 2);
  for (const auto& level : spec2.levels) {
    if (std::abs(level.energy - (level.n[0] + level.n[1] * std::numbers::sqrt2)) > 1e-8) return false;
  }
  return true;
}

bool check_winding(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 256, -8, 8, 256);
  for (int n : {0, 1, 2}) {
    const PhaseField eta = ho_eigen_eta(n, 1, 1, 1, grid);
    const WindingResult w = phase_winding(eta, model, n);
    if (w.winding != n || std::abs(w.raw - n) > 1e-3) return false;
  }
  return true;
}

bool check_invariance(unsigned) {
  const auto harmonic = HamiltonianModel::harmonic(1, 1);
  std::vector<PhasePoint> pts = {phase_point(0.7, -0.4), phase_point(-1.2, 0.9)};
  if (pdhdp_invariance_check(harmonic, identity_transform(1), pts).max_rel_discrepancy > 1e-10) {
    return false;
  }
  if (pdhdp_invariance_check(harmonic, scaling_transform(2.0), pts).max_rel_discrepancy > 1e-10) {
    return false;
  }
  const auto aniso = HamiltonianModel::anisotropic2d(1, 1, std::numbers::sqrt2);
  std::vector<PhasePoint> pts2 = {PhasePoint{vec2(1, 0), vec2(0, 1)}};
  return pdhdp_invariance_check(aniso, polar_transform(), pts2).max_rel_discrepancy <= 1e-10;
}

bool check_separability(unsigned seed) {
  const auto model = HamiltonianModel::anisotropic2d(1, 1, std::numbers::sqrt2);
  std::vector<ConstantOfMotion> cs = {dof_energy_constant(model, 0), dof_energy_constant(model, 1)};
  return separability_check(model, cs, 64, seed).max_abs <= 1e-12;
}

// ---- reference ----

bool check_eigensolve(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PositionGrid xg = PositionGrid::make1d(-13, 13, 384);
  const auto pairs = eigensolve(model, xg, 4);
  for (int n = 0; n < 4; ++n) {
    if (std::abs(pairs[n].energy - (n + 0.5)) > 1e-8) return false;
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < a; ++b) {
      if (std::abs(position_inner(pairs[a].state, pairs[b].state)) > 1e-10) return false;
    }
  }
  return true;
}

bool check_split_step(unsigned) {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PositionGrid xg = PositionGrid::make1d(-13, 13, 384);
  const PositionWavefunction psi = ho_eigenstate(1, 1, 1, 1, xg);
  const PositionWavefunction out = schrodinger_evolve(psi, model, 1.0, 2.5e-4);
  const Complex phase = std::polar(1.0, -1.5);
  double max_diff = 0.0;
  for (std::size_t k = 0; k < xg.size(); ++k) {
    max_diff = std::max(max_diff, std::abs(out[k] - phase * psi[k]));
  }
  if (max_diff > 1e-7) return false;
  return std::abs(l2_norm_sq(out) - 1.0) <= 1e-10;
}

struct Suite {
  std::string name;
  std::vector<Check> checks;
};

std::vector<Suite> build_suites() {
  return {
      {"phase-core",
       {{"hermite-and-gauss-identity", check_hermite},
        {"model-derivatives", check_model_derivatives},
        {"eta-norm", check_eta_norm},
        {"eta-modulus-on-shell", check_eta_modulus_on_shell}}},
      {"transform",
       {{"kernel-overlap", check_kernel},
        {"round-trip", check_round_trip},
        {"lift-matches-eta", check_lift_matches_eta},
        {"projector-idempotent", check_projector_idempotent},
        {"ladder-identity", check_ladder}}},
      {"classical",
       {{"flow-and-convergence", check_flow},
        {"action-integrals", check_action},
        {"bracket-of-f-of-H", check_bracket},
        {"liouville-stationary", check_liouville_stationary}}},
      {"se",
       {{"stationary-eta0", check_stationary_eta0},
        {"tise-residuals", check_tise},
        {"gauge-moduli", check_gauge_moduli},
        {"amplitude-phase", check_amplitude_phase}}},
      {"quantization",
       {{"bohr-sommerfeld", check_bohr_sommerfeld},
        {"phase-winding", check_winding},
        {"pdhdp-invariance", check_invariance},
        {"separability", check_separability}}},
      {"reference",
       {{"eigensolve", check_eigensolve},
        {"split-step", check_split_step}}},
  };
}

}  // namespace

bool run_validation(const std::string& suite, unsigned seed, std::ostream& out) {
  const auto suites = build_suites();
  bool found = false;
  bool all_ok = true;
  for (const auto& s : suites) {
    if (suite != "all" && suite != s.name) continue;
    found = true;
    for (const auto& [name, fn] : s.checks) {
      bool ok = false;
      try {
        ok = fn(seed);
      } catch (const Error& e) {
        out << "FAIL " << s.name << "/" << name << " (" << to_string(e.code()) << ")\n";
        all_ok = false;
        continue;
      }
      out << (ok ? "ok   " : "FAIL ") << s.name << "/" << name << "\n";
      all_ok = all_ok && ok;
    }
  }
  require(found, ErrorCode::UsageError, "unknown suite: " + suite);
  return all_ok;
}

}  // namespace phaseflow::cli
