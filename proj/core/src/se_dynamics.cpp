#include "phaseflow/se_dynamics.hpp"

#include <cmath>

#include "phaseflow/finite_diff.hpp"
#include "phaseflow/parallel.hpp"
#include "phaseflow/transport.hpp"

namespace phaseflow {

RealField kvn_action_table(const HamiltonianModel& model, const PhaseGrid& grid, double t,
                           const FlowConfig& cfg) {
  require(t >= 0.0, ErrorCode::InvalidExtent, "kvn_action_table needs t >= 0");
  RealField S(grid, t);
  if (t == 0.0) return S;
  const int n_steps = std::max(1, static_cast<int>(std::ceil(t / cfg.dt - 1e-12)));
  const double dt = t / n_steps;
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      // Integrate backwards from (z, t) to t = 0; the reversed traversal
      // accumulates minus the action of the arriving trajectory.
      PhasePoint z = grid.point(f);
      double s = 0.0;
      for (int k = 0; k < n_steps; ++k) {
        const PhasePoint mid = rk4_step(model, z, -dt / 2);
        const PhasePoint z0 = rk4_step(model, mid, -dt / 2);
        s += dt / 6.0 *
             (model.lagrangian(z0) + 4.0 * model.lagrangian(mid) + model.lagrangian(z));
        z = z0;
      }
      S[f] = s;
    }
  });
  return S;
}

GaugeSpec make_kvn_gauge(const HamiltonianModel& model, const PhaseGrid& grid, double t,
                         const FlowConfig& cfg) {
  GaugeSpec g;
  g.kind = GaugeKind::Kvn;
  g.action_table = std::make_shared<RealField>(kvn_action_table(model, grid, t, cfg));
  return g;
}

PhaseField se_evolve(const PhaseField& eta, const HamiltonianModel& model, double t_final,
                     const FlowConfig& cfg, const GaugeSpec& gauge, double hbar, double eps) {
  require(t_final >= 0.0, ErrorCode::InvalidExtent, "se_evolve needs t_final >= 0");
  require(eta.grid().dim() == model.dim(), ErrorCode::GridMismatch, "field and model dimensions differ");
  require_interior(eta, eps);
  if (t_final == 0.0) return eta;

  const int n_steps = std::max(1, static_cast<int>(std::ceil(t_final / cfg.dt - 1e-12)));
  const double dt = t_final / n_steps;
  const TransportPlan plan(eta.grid(), model, dt, cfg.interp);

  PhaseField m = eta;
  PhaseField m_next(eta.grid());
  RealField S(eta.grid());
  RealField S_next(eta.grid());
  const bool carry_phase = gauge.kind != GaugeKind::Kvn;
  for (int k = 0; k < n_steps; ++k) {
    plan.advect(m, m_next);
    std::swap(m, m_next);
    if (carry_phase) {
      plan.advect_action(S, S_next);
      std::swap(S, S_next);
    }
    if ((k & 15) == 15) {
      const double bm = boundary_mass(m);
      require(bm <= eps, ErrorCode::OutflowDetected,
              "characteristics carry amplitude into the boundary ring (" + std::to_string(bm) + ")");
    }
  }

  PhaseField out(eta.grid(), eta.time_tag() + t_final);
  switch (gauge.kind) {
    case GaugeKind::None:
      parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = m[i] * std::polar(1.0, S[i] / hbar);
      });
      break;
    case GaugeKind::Energy:
      parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const double Ht = model.value(out.grid().point(i)) * t_final;
          out[i] = m[i] * std::polar(1.0, (S[i] + Ht) / hbar);
        }
      });
      break;
    case GaugeKind::Kvn:
      out.values() = std::move(m.values());
      break;
  }
  const double bm = boundary_mass(out);
  require(bm <= eps, ErrorCode::OutflowDetected,
          "evolved field boundary mass " + std::to_string(bm) + " exceeds " + std::to_string(eps));
  return out;
}

PhaseField se_rhs_order2(const PhaseField& eta, const HamiltonianModel& model, double hbar) {
  const PhaseGrid& g = eta.grid();
  require(g.dim() == model.dim(), ErrorCode::GridMismatch, "field and model dimensions differ");
  const int D = g.dim();

  std::array<std::vector<Complex>, kMaxDim> dq, dp;
  for (int i = 0; i < D; ++i) {
    dq[i] = axis_derivative(g, eta.values(), i);
    dp[i] = axis_derivative(g, eta.values(), D + i);
  }
  // Second derivatives: direct stencil on the diagonal, composed first
  // derivatives for mixed pairs.
  std::array<std::array<std::vector<Complex>, kMaxDim>, kMaxDim> dqq, dpp, dqp;
  for (int i = 0; i < D; ++i) {
    for (int j = i; j < D; ++j) {
      if (i == j) {
        dqq[i][j] = axis_second_derivative(g, eta.values(), i);
        dpp[i][j] = axis_second_derivative(g, eta.values(), D + i);
      } else {
        dqq[i][j] = axis_derivative(g, dq[i], j);
        dpp[i][j] = axis_derivative(g, dp[i], D + j);
      }
    }
    for (int j = 0; j < D; ++j) {
      dqp[i][j] = axis_derivative(g, dq[i], D + j);
    }
  }
  auto sym = [](auto& m, int i, int j) -> const std::vector<Complex>& {
    return i <= j ? m[i][j] : m[j][i];
  };

  PhaseField out(g, eta.time_tag());
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const PhasePoint z = g.point(f);
      Complex acc{0.0, 0.0};
      double pp_pipj = 0.0;  // p_i p_j H_{p_i p_j}
      double trace_qp = 0.0;
      for (int i = 0; i < D; ++i) {
        trace_qp += model.d2_qp(z, i, i);
        for (int j = 0; j < D; ++j) {
          const double hpp = model.d2_pp(z, i, j);
          const double hqp = model.d2_qp(z, i, j);
          const double hqq = model.d2_qq(z, i, j);
          pp_pipj += z.p[i] * z.p[j] * hpp;
          acc += z.p[i] * (hpp * dq[j][f] - hqp * dp[j][f]);
          acc += Complex{0.0, 0.5 * hbar} *
                 (hpp * sym(dqq, i, j)[f] - 2.0 * hqp * dqp[i][j][f] + hqq * sym(dpp, i, j)[f]);
        }
      }
      acc += (Complex{0.0, -0.5 / hbar} * pp_pipj - 0.5 * trace_qp) * eta[f];
      out[f] = acc;
    }
  });
  return out;
}

namespace {

double masked_l2(const PhaseField& f) { return std::sqrt(l2_norm_sq(f)); }

}  // namespace

ResidualReport tise_residual(const PhaseField& eta, double E, const HamiltonianModel& model,
                             int order, double hbar, const GaugeSpec* gauge) {
  require(order == 1 || order == 2, ErrorCode::InvalidExtent, "tise_residual order must be 1 or 2");
  const PhaseGrid& g = eta.grid();
  const PhaseField bracket = poisson_bracket(eta, model);

  const RealField* S = nullptr;
  RealField s_bracket;
  if (gauge && gauge->kind == GaugeKind::Kvn && gauge->action_table) {
    require(gauge->action_table->grid().same_layout(g), ErrorCode::GridMismatch,
            "gauge action table grid differs from eta grid");
    S = gauge->action_table.get();
    s_bracket = poisson_bracket(*S, model);
  }

  PhaseField order2;
  if (order == 2) order2 = se_rhs_order2(eta, model, hbar);

  ResidualReport rep;
  rep.residual = PhaseField(g, eta.time_tag());
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const PhasePoint z = g.point(f);
      const double H = model.value(z);
      const Vec gp = model.grad_p(z);
      double pHp = 0.0;
      for (int i = 0; i < g.dim(); ++i) pHp += z.p[i] * gp[i];
      Complex r = E * eta[f] - (H - pHp) * eta[f] + Complex{0.0, hbar} * bracket[f];
      if (S) r -= s_bracket[f] * eta[f];
      if (order == 2) r -= Complex{0.0, hbar} * order2[f];
      rep.residual[f] = r;
    }
  });
  rep.norm = masked_l2(rep.residual);
  const double base = masked_l2(eta);
  rep.relative_norm = base > 0.0 ? rep.norm / base : 0.0;
  rep.valid_count = g.size();
  return rep;
}

std::pair<ResidualReport, ResidualReport> amplitude_phase_residuals(const PhaseField& eta, double E,
                                                                    const HamiltonianModel& model,
                                                                    double hbar, double floor_rel) {
  const PhaseGrid& g = eta.grid();
  require(g.dim() == model.dim(), ErrorCode::GridMismatch, "field and model dimensions differ");
  double peak = 0.0;
  for (const auto& v : eta.values()) peak = std::max(peak, std::abs(v));
  require(peak > 0.0, ErrorCode::AllMasked, "eta vanishes identically");
  const double floor = floor_rel * peak;

  // Amplitude residual {A, H}.
  RealField A(g, eta.time_tag());
  for (std::size_t f = 0; f < g.size(); ++f) A[f] = std::abs(eta[f]);
  const RealField rA = poisson_bracket(A, model);

  // Phase residual with locally unwrapped 5-point stencils per axis.
  const int na = g.axes_count();
  std::array<std::size_t, 2 * kMaxDim> strides{};
  std::size_t size = 1;
  for (int a = na - 1; a >= 0; --a) {
    strides[a] = size;
    size *= static_cast<std::size_t>(g.axis(a).count);
  }

  PhaseField r_beta_field(g, eta.time_tag());
  std::vector<char> valid(size, 0);
  parallel_for(size, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      if (std::abs(eta[f]) < floor || !g.interior(f, 2)) continue;
      const PhasePoint z = g.point(f);
      const Vec gq = model.grad_q(z);
      const Vec gp = model.grad_p(z);
      double bracket_beta = 0.0;
      bool ok = true;
      for (int a = 0; a < na && ok; ++a) {
        // Unwrap outward from the center along this axis.
        std::array<double, 5> phi{};
        phi[2] = std::arg(eta[f]);
        for (int s : {1, 2}) {
          const std::size_t up = f + s * strides[a];
          const std::size_t dn = f - s * strides[a];
          const std::size_t up_prev = f + (s - 1) * strides[a];
          const std::size_t dn_prev = f - (s - 1) * strides[a];
          if (std::abs(eta[up]) < floor || std::abs(eta[dn]) < floor) { ok = false; break; }
          phi[2 + s] = phi[2 + s - 1] + std::arg(eta[up] / eta[up_prev]);
          phi[2 - s] = phi[2 - s + 1] - std::arg(eta[dn_prev] / eta[dn]);
        }
        if (!ok) break;
        const double h = g.axis(a).spacing();
        const double dphi = (-phi[4] + 8.0 * phi[3] - 8.0 * phi[1] + phi[0]) / (12.0 * h);
        const double dbeta = hbar * dphi;
        const int i = a < g.dim() ? a : a - g.dim();
        bracket_beta += a < g.dim() ? dbeta * gp[i] : -dbeta * gq[i];
      }
      if (!ok) continue;
      double pHp = 0.0;
      for (int i = 0; i < g.dim(); ++i) pHp += z.p[i] * gp[i];
      r_beta_field[f] = E - model.value(z) + pHp - bracket_beta;
      valid[f] = 1;
    }
  });

  std::size_t n_valid = 0;
  double sum_sq = 0.0;
  for (std::size_t f = 0; f < size; ++f) {
    if (valid[f]) {
      ++n_valid;
      sum_sq += std::norm(r_beta_field[f]);
    }
  }
  require(n_valid > 0, ErrorCode::AllMasked, "phase residual: every point is below the amplitude floor");

  ResidualReport amp;
  amp.residual = PhaseField(g, eta.time_tag());
  for (std::size_t f = 0; f < size; ++f) amp.residual[f] = rA[f];
  amp.norm = masked_l2(amp.residual);
  double a_norm = 0.0;
  for (std::size_t f = 0; f < size; ++f) a_norm += trapezoid_weight(g, f) * A[f] * A[f];
  a_norm = std::sqrt(a_norm * g.cell_measure());
  amp.relative_norm = a_norm > 0.0 ? amp.norm / a_norm : 0.0;
  amp.valid_count = size;

  ResidualReport phase;
  phase.residual = r_beta_field;
  phase.norm = std::sqrt(sum_sq * g.cell_measure());
  phase.relative_norm = std::sqrt(sum_sq / static_cast<double>(n_valid));  // RMS energy units
  phase.valid_count = n_valid;
  return {amp, phase};
}

}  // namespace phaseflow
