#include "phaseflow/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaseflow/parallel.hpp"

namespace phaseflow {

namespace {

constexpr double kWindowSigmas = 12.0;

struct PhaseTables {
  // T[j*nx + k] = exp(-i p_j x_k / hbar), F[j*nq + i] = exp(+i p_j q_i / hbar)
  std::vector<Complex> T, F;
};

PhaseTables make_tables(const AxisSpec& q_ax, const AxisSpec& p_ax, const AxisSpec& x_ax, double hbar) {
  PhaseTables t;
  t.T.resize(static_cast<std::size_t>(p_ax.count) * x_ax.count);
  t.F.resize(static_cast<std::size_t>(p_ax.count) * q_ax.count);
  for (int j = 0; j < p_ax.count; ++j) {
    const double p = p_ax.coord(j);
    for (int k = 0; k < x_ax.count; ++k) {
      t.T[static_cast<std::size_t>(j) * x_ax.count + k] = std::polar(1.0, -p * x_ax.coord(k) / hbar);
    }
    for (int i = 0; i < q_ax.count; ++i) {
      t.F[static_cast<std::size_t>(j) * q_ax.count + i] = std::polar(1.0, p * q_ax.coord(i) / hbar);
    }
  }
  return t;
}

void window_range(const AxisSpec& x_ax, double q, double half_width, int& k0, int& k1) {
  k0 = std::max(0, static_cast<int>(std::floor((q - half_width - x_ax.min) / x_ax.spacing())));
  k1 = std::min(x_ax.count - 1, static_cast<int>(std::ceil((q + half_width - x_ax.min) / x_ax.spacing())));
}

PhaseField lift_1d(const PositionWavefunction& psi, const WavepacketFamily& family,
                   const PhaseGrid& grid, QuadratureMethod method) {
  const AxisSpec& q_ax = grid.q_axis();
  const AxisSpec& p_ax = grid.p_axis();
  const AxisSpec& x_ax = psi.grid().axis();
  const double dx = x_ax.spacing();
  const PhaseTables tab = make_tables(q_ax, p_ax, x_ax, family.hbar);

  std::vector<Complex> psi_w(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    psi_w[k] = psi[k] * trapezoid_weight(psi.grid(), k) * dx;
  }

  const double s2 = family.sigma * family.sigma;
  const double u0_norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
  const double t = psi.time_tag();

  PhaseField eta(grid, t);
  parallel_for(static_cast<std::size_t>(q_ax.count), [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> overlap(x_ax.count);
    for (std::size_t i = begin; i < end; ++i) {
      const double q = q_ax.coord(static_cast<int>(i));
      int k0 = 0, k1 = x_ax.count - 1;
      if (method == QuadratureMethod::Separable) {
        window_range(x_ax, q, kWindowSigmas * family.sigma, k0, k1);
      }
      for (int k = k0; k <= k1; ++k) {
        const double r = x_ax.coord(k) - q;
        overlap[k] = u0_norm * std::exp(-r * r / (4.0 * s2)) * psi_w[k];
      }
      for (int j = 0; j < p_ax.count; ++j) {
        Complex sum{0.0, 0.0};
        const Complex* Tj = tab.T.data() + static_cast<std::size_t>(j) * x_ax.count;
        for (int k = k0; k <= k1; ++k) sum += overlap[k] * Tj[k];
        Complex val = sum * tab.F[static_cast<std::size_t>(j) * q_ax.count + i];
        if (family.gauge) {
          const PhasePoint z = phase_point(q, p_ax.coord(j));
          val *= std::polar(1.0, -family.gauge(z, t));
        }
        eta[i * p_ax.count + j] = val;
      }
    }
  });
  return eta;
}

PhaseField lift_generic(const PositionWavefunction& psi, const WavepacketFamily& family,
                        const PhaseGrid& grid) {
  const double t = psi.time_tag();
  const double dmeas = psi.grid().cell_measure();
  PhaseField eta(grid, t);
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const PhasePoint z = grid.point(f);
      Complex sum{0.0, 0.0};
      for (std::size_t k = 0; k < psi.size(); ++k) {
        const Complex u = wavepacket_value(family, z, psi.grid().point(k), psi.grid().dim(), t);
        sum += std::conj(u) * psi[k] * trapezoid_weight(psi.grid(), k);
      }
      eta[f] = sum * dmeas;
    }
  });
  return eta;
}

}  // namespace

PhaseField lift(const PositionWavefunction& psi, const WavepacketFamily& family,
                const PhaseGrid& grid, QuadratureMethod method, double eps) {
  family.validate();
  require(psi.grid().dim() == grid.dim(), ErrorCode::GridMismatch,
          "wavefunction and phase grid dimensions differ");
  require_interior(psi, eps);
  for (int i = 0; i < psi.grid().dim(); ++i) {
    require(family.sigma >= 2.0 * psi.grid().dx(i), ErrorCode::QuadratureUnderresolved,
            "sigma < 2 dx: the x quadrature cannot resolve the wavepacket envelope");
  }
  if (grid.dim() == 1) return lift_1d(psi, family, grid, method);
  return lift_generic(psi, family, grid);
}

namespace {

PositionWavefunction project_1d(const PhaseField& eta, const WavepacketFamily& family,
                                const PositionGrid& xgrid, QuadratureMethod method) {
  const AxisSpec& q_ax = eta.grid().q_axis();
  const AxisSpec& p_ax = eta.grid().p_axis();
  const AxisSpec& x_ax = xgrid.axis();
  const PhaseTables tab = make_tables(q_ax, p_ax, x_ax, family.hbar);
  const double two_pi_hbar = 2.0 * std::numbers::pi * family.hbar;
  const double norm = eta.grid().cell_measure() / two_pi_hbar;
  const double t = eta.time_tag();

  // Gauge- and weight-dressed amplitudes, with the q-phase factor folded in:
  // a[i*np + j] = w_ij eta_ij exp(i phi) exp(-i p_j q_i / hbar) * norm
  std::vector<Complex> a(eta.size());
  for (int i = 0; i < q_ax.count; ++i) {
    for (int j = 0; j < p_ax.count; ++j) {
      const std::size_t f = static_cast<std::size_t>(i) * p_ax.count + j;
      Complex v = eta[f] * trapezoid_weight(eta.grid(), f) * norm;
      if (family.gauge) {
        const PhasePoint z = phase_point(q_ax.coord(i), p_ax.coord(j));
        v *= std::polar(1.0, family.gauge(z, t));
      }
      a[f] = v * std::conj(tab.F[static_cast<std::size_t>(j) * q_ax.count + i]);
    }
  }

  const double s2 = family.sigma * family.sigma;
  const double u0_norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);

  PositionWavefunction psi(xgrid, t);
  parallel_for(static_cast<std::size_t>(x_ax.count), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double x = x_ax.coord(static_cast<int>(k));
      int i0 = 0, i1 = q_ax.count - 1;
      if (method == QuadratureMethod::Separable) {
        window_range(q_ax, x, kWindowSigmas * family.sigma, i0, i1);
      }
      Complex sum{0.0, 0.0};
      for (int i = i0; i <= i1; ++i) {
        const double r = x - q_ax.coord(i);
        const double env = u0_norm * std::exp(-r * r / (4.0 * s2));
        Complex inner{0.0, 0.0};
        const Complex* ai = a.data() + static_cast<std::size_t>(i) * p_ax.count;
        for (int j = 0; j < p_ax.count; ++j) {
          inner += ai[j] * std::conj(tab.T[static_cast<std::size_t>(j) * x_ax.count + k]);
        }
        sum += env * inner;
      }
      psi[k] = sum;
    }
  });
  return psi;
}

PositionWavefunction project_generic(const PhaseField& eta, const WavepacketFamily& family,
                                     const PositionGrid& xgrid) {
  const double t = eta.time_tag();
  const double two_pi_hbar = 2.0 * std::numbers::pi * family.hbar;
  const double norm = eta.grid().cell_measure() / std::pow(two_pi_hbar, eta.grid().dim());
  PositionWavefunction psi(xgrid, t);
  parallel_for(xgrid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const Vec x = xgrid.point(k);
      Complex sum{0.0, 0.0};
      for (std::size_t f = 0; f < eta.size(); ++f) {
        const PhasePoint z = eta.grid().point(f);
        sum += wavepacket_value(family, z, x, eta.grid().dim(), t) * eta[f] *
               trapezoid_weight(eta.grid(), f);
      }
      psi[k] = sum * norm;
    }
  });
  return psi;
}

}  // namespace

PositionWavefunction project(const PhaseField& eta, const WavepacketFamily& family,
                             const PositionGrid& xgrid, QuadratureMethod method, double eps) {
  family.validate();
  require(xgrid.dim() == eta.grid().dim(), ErrorCode::GridMismatch,
          "phase grid and x grid dimensions differ");
  require_interior(eta, eps);
  if (eta.grid().dim() == 1) return project_1d(eta, family, xgrid, method);
  return project_generic(eta, family, xgrid);
}

Complex kernel(const WavepacketFamily& family, const PhasePoint& z, const PhasePoint& zp, int dim) {
  const double s2 = family.sigma * family.sigma;
  const double h = family.hbar;
  double re = 0.0, im = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double dq = zp.q[i] - z.q[i];
    const double dp = zp.p[i] - z.p[i];
    re -= dq * dq / (8.0 * s2) + s2 * dp * dp / (2.0 * h * h);
    im -= (zp.p[i] + z.p[i]) * dq / (2.0 * h);
  }
  return std::exp(re) * std::polar(1.0, im);
}

Complex project_q_at(const PhaseField& eta, const WavepacketFamily& family, const PhasePoint& z) {
  const PhaseGrid& g = eta.grid();
  const double two_pi_hbar = 2.0 * std::numbers::pi * family.hbar;
  const double norm = g.cell_measure() / std::pow(two_pi_hbar, g.dim());
  Complex sum{0.0, 0.0};
  for (std::size_t f = 0; f < g.size(); ++f) {
    if (eta[f] == Complex{0.0, 0.0}) continue;
    sum += kernel(family, z, g.point(f), g.dim()) * eta[f] * trapezoid_weight(g, f);
  }
  return sum * norm;
}

PhaseField project_q(const PhaseField& eta, const WavepacketFamily& family, double eps) {
  family.validate();
  require_interior(eta, eps);
  const PhaseGrid& g = eta.grid();
  PhaseField out(g, eta.time_tag());
  if (g.dim() == 1) {
    // Row-structured direct sum: precompute the separable kernel factors.
    const AxisSpec& q_ax = g.q_axis();
    const AxisSpec& p_ax = g.p_axis();
    const double s2 = family.sigma * family.sigma;
    const double h = family.hbar;
    const double norm = g.cell_measure() / (2.0 * std::numbers::pi * h);
    std::vector<Complex> wv(eta.size());
    for (std::size_t f = 0; f < eta.size(); ++f) wv[f] = eta[f] * trapezoid_weight(g, f);
    parallel_for(static_cast<std::size_t>(q_ax.count), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double q = q_ax.coord(static_cast<int>(i));
        for (int j = 0; j < p_ax.count; ++j) {
          const double p = p_ax.coord(j);
          Complex sum{0.0, 0.0};
          for (int ii = 0; ii < q_ax.count; ++ii) {
            const double dq = q_ax.coord(ii) - q;
            const double gq = std::exp(-dq * dq / (8.0 * s2));
            if (gq < 1e-16) continue;
            const Complex* row = wv.data() + static_cast<std::size_t>(ii) * p_ax.count;
            Complex inner{0.0, 0.0};
            for (int jj = 0; jj < p_ax.count; ++jj) {
              const double dp = p_ax.coord(jj) - p;
              const double gp = std::exp(-s2 * dp * dp / (2.0 * h * h));
              const double phase = -(p_ax.coord(jj) + p) * dq / (2.0 * h);
              inner += gp * std::polar(1.0, phase) * row[jj];
            }
            sum += gq * inner;
          }
          out[i * p_ax.count + j] = sum * norm;
        }
      }
    });
    return out;
  }
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      out[f] = project_q_at(eta, family, g.point(f));
    }
  });
  return out;
}

double suppression_timescale(const HamiltonianModel& model, const WavepacketFamily& family,
                             const PhasePoint& probe) {
  const Vec gq = model.grad_q(probe);
  const Vec gp = model.grad_p(probe);
  double gq2 = 0.0, gp2 = 0.0;
  for (int i = 0; i < model.dim(); ++i) {
    gq2 += gq[i] * gq[i];
    gp2 += gp[i] * gp[i];
  }
  const double s2 = family.sigma * family.sigma;
  const double inv_T2 = gp2 / (8.0 * s2) + s2 * gq2 / (2.0 * family.hbar * family.hbar);
  require(inv_T2 > 0.0, ErrorCode::StationaryPoint, "probe is a stationary point of H");
  return 1.0 / std::sqrt(inv_T2);
}

SuppressionCurve suppression_profile(const HamiltonianModel& model, const WavepacketFamily& family,
                                     const PhasePoint& probe, std::span<const double> offsets,
                                     const PhaseGrid& grid, const FlowConfig& cfg,
                                     const SuppressionOptions& opt) {
  family.validate();
  SuppressionCurve curve;
  curve.analytic_T = suppression_timescale(model, family, probe);

  double tau_max = opt.tau_span * curve.analytic_T;
  try {
    const double period = detect_period(model, probe, cfg, 1e4 * curve.analytic_T);
    tau_max = std::min(tau_max, opt.max_period_fraction * period);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoClosedOrbit) throw;
  }

  // Trajectory segment through the probe with the accumulated phase integrand
  // W(tau) = integral_0^tau p . dH/dp.
  const int half = opt.trajectory_samples / 2;
  const int n_samples = 2 * half + 1;
  std::vector<PhasePoint> zs(n_samples);
  std::vector<double> taus(n_samples), W(n_samples), speed(n_samples);
  const double dtau = tau_max / half;
  auto p_dot_hp = [&](const PhasePoint& z) {
    const Vec gp = model.grad_p(z);
    double s = 0.0;
    for (int i = 0; i < model.dim(); ++i) s += z.p[i] * gp[i];
    return s;
  };
  auto speed_of = [&](const PhasePoint& z) {
    Vec dq, dp;
    model.velocity(z, dq, dp);
    double s = 0.0;
    for (int i = 0; i < model.dim(); ++i) s += dq[i] * dq[i] + dp[i] * dp[i];
    return std::sqrt(s);
  };
  zs[half] = probe;
  taus[half] = 0.0;
  W[half] = 0.0;
  speed[half] = speed_of(probe);
  for (int dir : {+1, -1}) {
    PhasePoint z = probe;
    double w_acc = 0.0;
    for (int s = 1; s <= half; ++s) {
      const PhasePoint mid = rk4_step(model, z, dir * dtau / 2);
      const PhasePoint z_next = rk4_step(model, mid, dir * dtau / 2);
      w_acc += dir * dtau / 6.0 * (p_dot_hp(z) + 4.0 * p_dot_hp(mid) + p_dot_hp(z_next));
      z = z_next;
      const int idx = half + dir * s;
      zs[idx] = z;
      taus[idx] = dir * s * dtau;
      W[idx] = w_acc;
      speed[idx] = speed_of(z);
    }
  }

  // Nearest ribbon sample per grid node (geometry is offset-independent).
  const double w_ridge = opt.ridge_cells * std::min(grid.dq(), grid.dp());
  struct RibbonHit { std::size_t node; int sample; double amp; };
  std::vector<RibbonHit> hits;
  {
    std::vector<int> nearest(grid.size(), -1);
    std::vector<double> dist2(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t f = begin; f < end; ++f) {
        const PhasePoint z = grid.point(f);
        double best = 1e300;
        int best_s = -1;
        for (int s = 0; s < n_samples; ++s) {
          double d2 = 0.0;
          for (int i = 0; i < model.dim(); ++i) {
            const double a = z.q[i] - zs[s].q[i];
            const double b = z.p[i] - zs[s].p[i];
            d2 += a * a + b * b;
          }
          if (d2 < best) { best = d2; best_s = s; }
        }
        nearest[f] = best_s;
        dist2[f] = best;
      }
    });
    const double cut2 = 36.0 * w_ridge * w_ridge;
    const double two_pi_hbar = 2.0 * std::numbers::pi * family.hbar;
    const double delta_norm = std::pow(two_pi_hbar, model.dim()) /
                              (std::sqrt(2.0 * std::numbers::pi) * w_ridge);
    for (std::size_t f = 0; f < grid.size(); ++f) {
      if (dist2[f] > cut2) continue;
      const int s = nearest[f];
      // interior ribbon samples only; the ends fade via the kernel decay
      if (s == 0 || s == n_samples - 1) continue;
      hits.push_back({f, s, delta_norm * std::exp(-dist2[f] / (2.0 * w_ridge * w_ridge)) / speed[s]});
    }
  }
  require(!hits.empty(), ErrorCode::OrbitOutsideGrid, "ribbon segment does not intersect the grid");

  auto evaluate = [&](double dE) {
    PhaseField ribbon(grid);
    for (const RibbonHit& h : hits) {
      const double beta = W[h.sample] + dE * taus[h.sample];
      ribbon[h.node] = h.amp * std::polar(1.0, beta / family.hbar);
    }
    return std::abs(project_q_at(ribbon, family, probe));
  };

  const double base = evaluate(0.0);
  require(base > 0.0, ErrorCode::OrbitOutsideGrid, "zero baseline projection");
  curve.offsets.assign(offsets.begin(), offsets.end());
  curve.ratios.resize(curve.offsets.size());
  for (std::size_t i = 0; i < curve.offsets.size(); ++i) {
    curve.ratios[i] = evaluate(curve.offsets[i]) / base;
  }

  // Least squares of ln r = -(dE^2 / 4 hbar^2) T^2 over informative ratios.
  double num = 0.0, den = 0.0;
  const double h2 = family.hbar * family.hbar;
  for (std::size_t i = 0; i < curve.offsets.size(); ++i) {
    const double r = curve.ratios[i];
    if (r < 0.05 || r >= 1.0 || curve.offsets[i] == 0.0) continue;
    const double a = -curve.offsets[i] * curve.offsets[i] / (4.0 * h2);
    num += a * std::log(r);
    den += a * a;
  }
  curve.fitted_T = den > 0.0 ? std::sqrt(std::max(0.0, num / den)) : 0.0;
  return curve;
}

}  // namespace phaseflow
