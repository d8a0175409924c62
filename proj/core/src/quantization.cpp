#include "phaseflow/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "phaseflow/interpolate.hpp"
#include "phaseflow/parallel.hpp"

namespace phaseflow {

namespace {

// Right turning point of the per-DOF potential slice at energy E (other DOFs
// at the minimum), found by bracketing plus bisection.
double turning_point(const HamiltonianModel& model, double E, int dof) {
  auto h_of_q = [&](double q) {
    PhasePoint z{};
    z.q[dof] = q;
    return model.value(z);
  };
  double hi = 1.0;
  int guard = 0;
  while (h_of_q(hi) < E) {
    hi *= 2.0;
    require(++guard < 200, ErrorCode::NoClosedOrbit, "potential never reaches E; orbit does not close");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h_of_q(mid) < E ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double action_integral(const HamiltonianModel& model, double E, int dof, const FlowConfig& cfg) {
  require(dof >= 0 && dof < model.dim(), ErrorCode::InvalidExtent, "dof out of range");
  require(model.confining(dof), ErrorCode::NoClosedOrbit,
          std::string(model.name()) + " model has no closed orbits");
  const double e_min = model.min_energy();
  require(E >= e_min, ErrorCode::EnergyBelowMinimum,
          "E = " + std::to_string(E) + " below the potential minimum");
  if (E == e_min) return 0.0;

  PhasePoint z0{};
  z0.q[dof] = turning_point(model, E, dof);
  const DofSelector sel{dof};

  const double period = detect_period(model, z0, cfg, 1e6 * cfg.dt, sel);
  // One closed orbit, co-integrating J = integral p_i dH/dp_i dt.
  const int n_steps = std::max(100, static_cast<int>(std::ceil(period / cfg.dt)));
  const double dt = period / n_steps;
  PhasePoint z = z0;
  double J = 0.0;
  auto integrand = [&](const PhasePoint& w) {
    const Vec gp = model.grad_p(w);
    return w.p[dof] * gp[dof];
  };
  for (int k = 0; k < n_steps; ++k) {
    const PhasePoint mid = rk4_step(model, z, dt / 2, sel);
    const PhasePoint nxt = rk4_step(model, mid, dt / 2, sel);
    J += dt / 6.0 * (integrand(z) + 4.0 * integrand(mid) + integrand(nxt));
    z = nxt;
  }
  return J;
}

namespace {

double solve_level(const HamiltonianModel& model, int dof, double target_J, const FlowConfig& cfg) {
  const double e_min = model.min_energy();
  if (target_J <= 0.0) return e_min;
  double lo = e_min;
  double hi = std::max(1.0, 2.0 * e_min + 1.0);
  int guard = 0;
  while (action_integral(model, hi, dof, cfg) < target_J) {
    hi *= 2.0;
    require(++guard < 60, ErrorCode::RootNotBracketed, "could not bracket J(E) = n h");
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
    (action_integral(model, mid, dof, cfg) < target_J ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpectrumResult bohr_sommerfeld_levels(const HamiltonianModel& model, int n_max, double hbar,
                                      const FlowConfig& cfg) {
  require(n_max >= 0, ErrorCode::InvalidExtent, "n_max must be nonnegative");
  require(model.confining(0), ErrorCode::NoClosedOrbit,
          std::string(model.name()) + " model is not confining");
  const double h = 2.0 * std::numbers::pi * hbar;

  SpectrumResult result;
  result.dim = model.dim();
  std::array<std::vector<double>, kMaxDim> per_dof;
  for (int dof = 0; dof < model.dim(); ++dof) {
    per_dof[dof].resize(n_max + 1);
    std::vector<int> ns(n_max + 1);
    for (int n = 0; n <= n_max; ++n) ns[n] = n;
    // Independent level solves.
    parallel_for(ns.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        per_dof[dof][k] = solve_level(model, dof, ns[k] * h, cfg);
      }
    });
  }

  if (model.dim() == 1) {
    for (int n = 0; n <= n_max; ++n) {
      result.levels.push_back({{n, 0}, per_dof[0][n], std::nullopt, std::nullopt});
    }
  } else {
    for (int n1 = 0; n1 <= n_max; ++n1) {
      for (int n2 = 0; n2 <= n_max; ++n2) {
        result.levels.push_back({{n1, n2}, per_dof[0][n1] + per_dof[1][n2], std::nullopt, std::nullopt});
      }
    }
    std::stable_sort(result.levels.begin(), result.levels.end(),
                     [](const SpectrumLevel& a, const SpectrumLevel& b) { return a.energy < b.energy; });
  }
  return result;
}

WindingResult phase_winding(const PhaseField& eta, const HamiltonianModel& model, double E,
                            const FlowConfig& cfg, int n_samples, double amp_floor_rel) {
  require(eta.grid().dim() == model.dim(), ErrorCode::GridMismatch, "field and model dimensions differ");
  require(model.dim() == 1, ErrorCode::InvalidExtent, "phase_winding handles 1D orbits");
  if (E <= model.min_energy()) return {0, 0.0};

  PhasePoint z0{};
  z0.q[0] = turning_point(model, E, 0);
  const double period = detect_period(model, z0, cfg, 1e6 * cfg.dt);
  const double dt = period / n_samples;

  double peak = 0.0;
  for (const auto& v : eta.values()) peak = std::max(peak, std::abs(v));
  const double floor = amp_floor_rel * peak;

  PhasePoint z = z0;
  Complex prev = interpolate(eta, z, cfg.interp);
  require(std::abs(prev) >= floor, ErrorCode::AmplitudeZeroOnOrbit,
          "amplitude below floor at the orbit start");
  double total = 0.0;
  for (int k = 1; k <= n_samples; ++k) {
    // Close the loop exactly by reusing the start point.
    if (k == n_samples) {
      z = z0;
    } else {
      const PhasePoint mid = rk4_step(model, z, dt / 2);
      z = rk4_step(model, mid, dt / 2);
    }
    require(eta.grid().contains(z), ErrorCode::OrbitOutsideGrid,
            "classical orbit leaves the phase grid");
    const Complex cur = interpolate(eta, z, cfg.interp);
    require(std::abs(cur) >= floor, ErrorCode::AmplitudeZeroOnOrbit,
            "amplitude below floor along the orbit");
    total += std::arg(cur / prev);
    prev = cur;
  }
  const double raw = total / (2.0 * std::numbers::pi);
  return {static_cast<int>(std::lround(raw)), raw};
}

CoordinateTransform identity_transform(int dim) {
  CoordinateTransform xf;
  xf.name = "identity";
  xf.dim = dim;
  xf.forward = [](const Vec& q) { return q; };
  xf.jacobian = [dim](const Vec&) {
    std::array<Vec, kMaxDim> J{};
    for (int i = 0; i < dim; ++i) J[i][i] = 1.0;
    return J;
  };
  return xf;
}

CoordinateTransform scaling_transform(double factor) {
  require(factor != 0.0, ErrorCode::SingularJacobian, "scaling factor must be nonzero");
  CoordinateTransform xf;
  xf.name = "scaling";
  xf.dim = 1;
  xf.forward = [factor](const Vec& q) { return Vec{factor * q[0], 0.0}; };
  xf.jacobian = [factor](const Vec&) {
    std::array<Vec, kMaxDim> J{};
    J[0][0] = factor;
    return J;
  };
  return xf;
}

CoordinateTransform polar_transform() {
  CoordinateTransform xf;
  xf.name = "polar";
  xf.dim = 2;
  xf.forward = [](const Vec& q) {
    return Vec{std::hypot(q[0], q[1]), std::atan2(q[1], q[0])};
  };
  xf.jacobian = [](const Vec& q) {
    const double r = std::hypot(q[0], q[1]);
    std::array<Vec, kMaxDim> J{};
    J[0] = Vec{q[0] / r, q[1] / r};
    J[1] = Vec{-q[1] / (r * r), q[0] / (r * r)};
    return J;
  };
  return xf;
}

namespace {

// Solve (J^T) P = p for P; 2x2 (or 1x1) direct.
Vec momentum_map(const std::array<Vec, kMaxDim>& J, const Vec& p, int dim) {
  if (dim == 1) {
    require(std::abs(J[0][0]) > 1e-14, ErrorCode::SingularJacobian, "singular 1D Jacobian");
    return Vec{p[0] / J[0][0], 0.0};
  }
  // p_i = sum_j J[j][i] P_j  =>  M P = p with M[i][j] = J[j][i]
  const double a = J[0][0], b = J[1][0], c = J[0][1], d = J[1][1];
  const double det = a * d - b * c;
  require(std::abs(det) > 1e-14, ErrorCode::SingularJacobian, "singular Jacobian");
  return Vec{(d * p[0] - b * p[1]) / det, (-c * p[0] + a * p[1]) / det};
}

}  // namespace

InvarianceReport pdhdp_invariance_check(const HamiltonianModel& model, const CoordinateTransform& xf,
                                        std::span<const PhasePoint> points) {
  require(xf.dim == model.dim(), ErrorCode::GridMismatch, "transform and model dimensions differ");
  InvarianceReport report;
  const double fd_step = 1e-4;
  for (const PhasePoint& z : points) {
    const auto J = xf.jacobian(z.q);
    const Vec P = momentum_map(J, z.p, model.dim());

    // original-coordinate value
    const Vec gp = model.grad_p(z);
    double direct = 0.0;
    for (int i = 0; i < model.dim(); ++i) direct += z.p[i] * gp[i];

    // H~(Q, P) = H(q(Q), p(Q, P)) with q held at the sample point; dH~/dP_i by
    // central differences through the momentum relation p = J^T P.
    auto H_of_P = [&](const Vec& Pv) {
      PhasePoint w = z;
      for (int i = 0; i < model.dim(); ++i) {
        double pi = 0.0;
        for (int j = 0; j < model.dim(); ++j) pi += J[j][i] * Pv[j];
        w.p[i] = pi;
      }
      return model.value(w);
    };
    double transformed = 0.0;
    for (int i = 0; i < model.dim(); ++i) {
      Vec Pp = P, Pm = P;
      const double h = fd_step * std::max(1.0, std::abs(P[i]));
      Pp[i] += h;
      Pm[i] -= h;
      transformed += P[i] * (H_of_P(Pp) - H_of_P(Pm)) / (2.0 * h);
    }
    const double diff = std::abs(transformed - direct);
    report.max_abs_discrepancy = std::max(report.max_abs_discrepancy, diff);
    report.max_rel_discrepancy =
        std::max(report.max_rel_discrepancy, diff / std::max(1.0, std::abs(direct)));
  }
  return report;
}

ConstantOfMotion dof_energy_constant(const HamiltonianModel& model, int dof) {
  require(dof >= 0 && dof < model.dim(), ErrorCode::InvalidExtent, "dof out of range");
  ConstantOfMotion c;
  c.name = "h_" + std::to_string(dof);
  c.value = [model, dof](const PhasePoint& z) {
    PhasePoint w{};
    w.q[dof] = z.q[dof];
    w.p[dof] = z.p[dof];
    return model.value(w) - model.min_energy();
  };
  c.grad_q = [model, dof](const PhasePoint& z) {
    PhasePoint w{};
    w.q[dof] = z.q[dof];
    w.p[dof] = z.p[dof];
    const Vec g = model.grad_q(w);
    Vec out{};
    out[dof] = g[dof];
    return out;
  };
  c.grad_p = [model, dof](const PhasePoint& z) {
    PhasePoint w{};
    w.q[dof] = z.q[dof];
    w.p[dof] = z.p[dof];
    const Vec g = model.grad_p(w);
    Vec out{};
    out[dof] = g[dof];
    return out;
  };
  return c;
}

ConstantOfMotion coordinate_constant(int axis) {
  ConstantOfMotion c;
  c.name = "q_" + std::to_string(axis);
  c.value = [axis](const PhasePoint& z) { return z.q[axis]; };
  c.grad_q = [axis](const PhasePoint&) {
    Vec out{};
    out[axis] = 1.0;
    return out;
  };
  c.grad_p = [](const PhasePoint&) { return Vec{}; };
  return c;
}

SeparabilityReport separability_check(const HamiltonianModel& model,
                                      std::span<const ConstantOfMotion> constants, int n_samples,
                                      unsigned seed, double box_half_width) {
  SeparabilityReport report;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-box_half_width, box_half_width);
  for (int s = 0; s < n_samples; ++s) {
    PhasePoint z{};
    for (int i = 0; i < model.dim(); ++i) {
      z.q[i] = u(rng);
      z.p[i] = u(rng);
    }
    const Vec Hq = model.grad_q(z);
    const Vec Hp = model.grad_p(z);
    for (std::size_t ci = 0; ci < constants.size(); ++ci) {
      const Vec cq = constants[ci].grad_q(z);
      const Vec cp = constants[ci].grad_p(z);
      for (int j = 0; j < model.dim(); ++j) {
        const double term = cq[j] * Hp[j] - cp[j] * Hq[j];
        report.term[ci][j] = std::max(report.term[ci][j], std::abs(term));
        report.max_abs = std::max(report.max_abs, std::abs(term));
      }
    }
  }
  return report;
}

}  // namespace phaseflow
