// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each check pins its tolerance in code; most finish in seconds, the
// transport-equivalence one dominates the runtime.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "phaseflow/classical.hpp"
#include "phaseflow/ho_states.hpp"
#include "phaseflow/quantization.hpp"
#include "phaseflow/reference.hpp"
#include "phaseflow/se_dynamics.hpp"
#include "phaseflow/transform.hpp"

using namespace phaseflow;

namespace {

const double kPi = std::numbers::pi;
int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%-4s criterion %2d  %-28s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double rel_l2_diff(const PositionWavefunction& a, const PositionWavefunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return std::sqrt(num / den);
}

// 1. project(lift(psi)) = psi to 1e-6 for n in {0,1,2} on the pinned grids.
void criterion_1() {
  Timer timer;
  const PositionGrid xg = PositionGrid::make1d(-16, 16, 2048);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, 192, -7.5, 7.5, 192);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  double worst = 0.0;
  for (int n : {0, 1, 2}) {
    const PositionWavefunction psi = ho_eigenstate(n, 1, 1, 1, xg);
    const PositionWavefunction back = project(lift(psi, fam, grid), fam, xg);
    worst = std::max(worst, rel_l2_diff(back, psi));
  }
  const double t = timer.seconds();
  report(1, "round-trip isometry", worst <= 1e-6 && t <= 30.0,
         fmt("max rel L2 = %.2e (tol 1e-6), %.1f s (cap 30 s)", worst, t));
}

// 2. lift of the exact eigenstate matches the closed-form eta_n to 1e-5.
void criterion_2() {
  const PositionGrid xg = PositionGrid::make1d(-16, 16, 2048);
  const PhaseGrid grid = PhaseGrid::make1d(-9, 9, 192, -9, 9, 192);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const PhaseField eta = lift(ho_eigenstate(n, 1, 1, 1, xg), fam, grid);
    double num = 0.0, den = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
      const Complex ref = ho_eigen_eta_value(n, 1, 1, 1, grid.point(f));
      num += std::norm(eta[f] - ref);
      den += std::norm(ref);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  report(2, "analytic lift match", worst <= 1e-5, fmt("max rel L2 = %.2e (tol 1e-5)", worst));
}

// 3. First-order eigenvalue and the second-order zero-point energy.
void criterion_3() {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-11, 11, 1024, -11, 11, 1024);
  double worst1 = 0.0, worst_half = 0.0, worst2 = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const PhaseField eta = ho_eigen_eta(n, 1, 1, 1, grid);
    worst1 = std::max(worst1, tise_residual(eta, n, model, 1).relative_norm);
    worst_half = std::max(worst_half,
                          std::abs(tise_residual(eta, n + 0.5, model, 1).relative_norm - 0.5));
    worst2 = std::max(worst2, tise_residual(eta, n + 0.5, model, 2).relative_norm);
  }
  report(3, "first-order eigenvalue",
         worst1 <= 1e-5 && worst_half <= 1e-5 && worst2 <= 1e-5,
         fmt("order1 = %.2e, |order1(n+1/2) - hw/2| = %.2e, order2 = %.2e (tol 1e-5)", worst1,
             worst_half, worst2));
}

// 4. |se_evolve(eta)|^2 equals the Liouville-evolved density pointwise.
void criterion_4() {
  Timer timer;
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-7, 7, 384, -7, 7, 384);
  PhaseField eta0(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const PhasePoint z = grid.point(f);
    const double dq = z.q[0] - 1.0, dp = z.p[0];
    eta0[f] = std::exp(-(dq * dq + dp * dp) / 4.0);
  }
  FlowConfig cfg;
  cfg.dt = 1e-3;
  const int n_steps = static_cast<int>(std::lround(2.0 * kPi / cfg.dt));
  const double t = n_steps * cfg.dt;
  const PhaseField eta = se_evolve(eta0, model, t, cfg);
  const DensityField rho =
      liouville_step(DensityField::from_amplitude(eta0), model, cfg.dt, n_steps);
  double peak = 0.0, worst = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    peak = std::max(peak, rho[f]);
    worst = std::max(worst, std::abs(std::norm(eta[f]) - rho[f]));
  }
  report(4, "Liouville equivalence", worst / peak <= 1e-6,
         fmt("max |.|^2 diff = %.2e of peak (tol 1e-6), %.0f s", worst / peak, timer.seconds()));
}

// 5. Peak-tracked phase change = action / hbar on the free model.
void criterion_5() {
  const auto model = HamiltonianModel::free_particle(1);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 10, 289, -4, 8, 193);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  PhaseField eta0(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    eta0[f] = kernel(fam, grid.point(f), phase_point(0, 2), 1);
  }
  FlowConfig cfg;
  cfg.dt = 1e-3;
  const PhaseField eta = se_evolve(eta0, model, 1.0, cfg);

  // the initial peak sits on the grid node (0, 2); its transport lands on (2, 2)
  auto node = [&](double q, double p) {
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t f = 0; f < grid.size(); ++f) {
      const PhasePoint z = grid.point(f);
      const double d = std::hypot(z.q[0] - q, z.p[0] - p);
      if (d < best_d) { best_d = d; best = f; }
    }
    return best;
  };
  const double phase0 = std::arg(eta0[node(0, 2)]);
  const double phase1 = std::arg(eta[node(2, 2)]);
  double delta = phase1 - phase0;
  while (delta < -kPi) delta += 2 * kPi;
  while (delta > kPi) delta -= 2 * kPi;

  const Trajectory traj = integrate_trajectory(model, phase_point(0, 2), 1.0, cfg);
  const double action = accumulate_action(traj, model);  // = 2
  report(5, "action-phase law", std::abs(delta - action) <= 1e-4,
         fmt("peak phase change = %.6f vs S/hbar = %.6f (tol 1e-4)", delta, action));
}

// 6. Bohr-Sommerfeld spectra: harmonic exact, anisotropic sums, quartic vs oracle.
void criterion_6() {
  Timer timer;
  bool ok = true;
  std::string detail;

  const SpectrumResult harm = bohr_sommerfeld_levels(HamiltonianModel::harmonic(1, 1), 10);
  double worst_h = 0.0;
  for (int n = 0; n <= 10; ++n) worst_h = std::max(worst_h, std::abs(harm.levels[n].energy - n));
  ok = ok && worst_h <= 1e-10;

  const double w2 = std::numbers::sqrt2;
  const SpectrumResult aniso = bohr_sommerfeld_levels(HamiltonianModel::anisotropic2d(1, 1, w2), 3);
  double worst_a = 0.0;
  for (const auto& level : aniso.levels) {
    worst_a = std::max(worst_a, std::abs(level.energy - (level.n[0] + w2 * level.n[1])));
  }
  ok = ok && worst_a <= 1e-8;

  const auto quartic = HamiltonianModel::quartic(1, 1);
  const SpectrumResult q = bohr_sommerfeld_levels(quartic, 10);
  const auto oracle = eigensolve(quartic, PositionGrid::make1d(-8, 8, 768), 11);
  bool monotone = true;
  double prev = 1e300, err10 = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const double rel = std::abs(q.levels[n].energy - oracle[n].energy) / oracle[n].energy;
    if (rel >= prev) monotone = false;
    prev = rel;
    if (n == 10) err10 = rel;
  }
  const bool quartic_ok = monotone && err10 <= 0.03;
  ok = ok && quartic_ok;

  const double t = timer.seconds();
  ok = ok && t <= 60.0;
  report(6, "Bohr-Sommerfeld spectra", ok,
         fmt("harmonic %.1e, aniso %.1e, quartic monotone=%d err(n=10)=%.4f (tol .03), %.0f s",
             worst_h, worst_a, monotone ? 1 : 0, err10, t));
}

// 7. Phase winding of eta_n around its orbit.
void criterion_7() {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-9, 9, 384, -9, 9, 384);
  bool ok = true;
  double worst_raw = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const PhaseField eta = ho_eigen_eta(n, 1, 1, 1, grid);
    const WindingResult w = phase_winding(eta, model, n);
    ok = ok && w.winding == n;
    worst_raw = std::max(worst_raw, std::abs(w.raw - n));
  }
  report(7, "phase winding", ok && worst_raw <= 1e-3,
         fmt("windings exact, max |raw - n| = %.2e (tol 1e-3)", worst_raw));
}

// 8. Off-shell suppression width against the analytic timescale (hbar chosen
// in the asymptotic regime the expansion needs).
void criterion_8() {
  const auto model = HamiltonianModel::harmonic(1, 1);
  WavepacketFamily fam;
  fam.sigma = 1.0;
  fam.hbar = 0.05;
  bool ok = true;
  std::string detail;
  for (const PhasePoint probe : {phase_point(1, 0), phase_point(1, 1)}) {
    const double T = suppression_timescale(model, fam, probe);
    const PhaseGrid grid = PhaseGrid::make1d(probe.q[0] - 0.55, probe.q[0] + 0.55, 160,
                                             probe.p[0] - 0.55, probe.p[0] + 0.55, 160);
    std::vector<double> offsets;
    for (int k = -8; k <= 8; ++k) offsets.push_back(2.0 * fam.hbar / T * k / 8.0);
    const SuppressionCurve curve = suppression_profile(model, fam, probe, offsets, grid);
    const double dev = std::abs(curve.fitted_T / T - 1.0);
    ok = ok && dev <= 0.05;
    detail += fmt("(%g,%g): %.2f%%  ", probe.q[0], probe.p[0], 100.0 * dev);
  }
  report(8, "off-shell suppression", ok, detail + "(tol 5%)");
}

// 9. Coordinate-transform and separability identities.
void criterion_9() {
  const auto harmonic = HamiltonianModel::harmonic(1, 1);
  const std::vector<PhasePoint> pts_1d = {phase_point(0.7, -0.4), phase_point(-1.2, 0.9),
                                          phase_point(0.3, 1.7)};
  const double d_ident =
      pdhdp_invariance_check(harmonic, identity_transform(1), pts_1d).max_rel_discrepancy;
  const double d_scale =
      pdhdp_invariance_check(harmonic, scaling_transform(2.0), pts_1d).max_rel_discrepancy;
  const auto aniso = HamiltonianModel::anisotropic2d(1, 1, std::numbers::sqrt2);
  const std::vector<PhasePoint> pts_2d = {PhasePoint{vec2(1, 0), vec2(0, 1)},
                                          PhasePoint{vec2(0.6, -0.8), vec2(0.5, 0.3)}};
  const double d_polar =
      pdhdp_invariance_check(aniso, polar_transform(), pts_2d).max_rel_discrepancy;

  std::vector<ConstantOfMotion> cs = {dof_energy_constant(aniso, 0), dof_energy_constant(aniso, 1)};
  const double sep = separability_check(aniso, cs, 64, 42).max_abs;

  const bool ok = d_ident <= 1e-10 && d_scale <= 1e-10 && d_polar <= 1e-10 && sep <= 1e-12;
  report(9, "transform invariances", ok,
         fmt("pdhdp: %.1e / %.1e / %.1e (tol 1e-10), separability %.1e (tol 1e-12)", d_ident,
             d_scale, d_polar, sep));
}

// 10. KvN gauge: real-positive transport with gauge-independent modulus.
void criterion_10() {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PhaseGrid grid = PhaseGrid::make1d(-7.5, 7.5, 256, -7.5, 7.5, 256);
  PhaseField eta0(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const PhasePoint z = grid.point(f);
    const double dq = z.q[0] - 1.0, dp = z.p[0];
    eta0[f] = std::exp(-(dq * dq + dp * dp) / 4.0);
  }
  FlowConfig cfg;
  cfg.dt = 2 * kPi / 512;
  GaugeSpec kvn;
  kvn.kind = GaugeKind::Kvn;
  const PhaseField out_kvn = se_evolve(eta0, model, 2 * kPi, cfg, kvn);
  const PhaseField out_none = se_evolve(eta0, model, 2 * kPi, cfg);
  double peak = 0.0;
  for (const auto& v : out_kvn.values()) peak = std::max(peak, std::abs(v));
  double max_phase = 0.0, max_mod = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (std::abs(out_kvn[f]) >= 1e-4 * peak) {
      max_phase = std::max(max_phase, std::abs(std::arg(out_kvn[f])));
    }
    max_mod = std::max(max_mod, std::abs(std::abs(out_kvn[f]) - std::abs(out_none[f])));
  }
  report(10, "KvN gauge property", max_phase <= 1e-6 && max_mod <= 1e-8 * peak,
         fmt("max phase = %.2e rad (tol 1e-6), modulus diff = %.2e of peak (tol 1e-8)", max_phase,
             max_mod / peak));
}

// 11. The first-order propagator misses exactly the zero-point phase pi over
// one period.
void criterion_11() {
  const auto model = HamiltonianModel::harmonic(1, 1);
  const PositionGrid xg = PositionGrid::make1d(-14, 14, 1024);
  const PhaseGrid grid = PhaseGrid::make1d(-8, 8, 320, -8, 8, 320);
  const WavepacketFamily fam = coherent_family(1, 1, 1);
  const PositionWavefunction psi0 = ho_eigenstate(0, 1, 1, 1, xg);
  const double T = 2 * kPi;

  FlowConfig cfg;
  cfg.dt = 2 * kPi / 1024;
  const PhaseField se_path = se_evolve(lift(psi0, fam, grid), model, T, cfg);
  const PhaseField lift_path = lift(schrodinger_evolve(psi0, model, T, 2.5e-4), fam, grid);

  Complex ip{0.0, 0.0};
  for (std::size_t f = 0; f < grid.size(); ++f) ip += std::conj(lift_path[f]) * se_path[f];
  const double phase_gap = std::abs(std::abs(std::arg(ip)) - kPi);
  report(11, "zero-point phase gap", phase_gap <= 1e-3,
         fmt("| |arg<lift, se>| - pi | = %.2e rad (tol 1e-3)", phase_gap));
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  criterion_1();
  criterion_2();
  criterion_3();
  if (!quick) criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
    std::printf("note: the quartic <= 3%% clause of criterion 6 cannot hold for J = n h\n"
                "quantization (no zero-point term): E ~ J^(4/3) puts the half-quantum shift\n"
                "at ~6.3%% for n = 10. See README.md.\n");
  }
  return g_failures == 0 ? 0 : 1;
}
