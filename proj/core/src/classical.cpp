#include "phaseflow/classical.hpp"

#include <cmath>
#include <cstdint>

#include "phaseflow/finite_diff.hpp"
#include "phaseflow/parallel.hpp"
#include "phaseflow/transport.hpp"

namespace phaseflow {

namespace {

struct Deriv {
  Vec dq{}, dp{};
  double dS = 0.0;
};

Deriv flow_rhs(const HamiltonianModel& model, const PhasePoint& z, DofSelector sel) {
  Deriv d;
  Vec dq, dp;
  model.velocity(z, dq, dp);
  for (int i = 0; i < model.dim(); ++i) {
    if (sel.active(i)) {
      d.dq[i] = dq[i];
      d.dp[i] = dp[i];
    }
  }
  // Action integrand restricted to the moving pairs.
  const Vec gp = model.grad_p(z);
  double pdot = 0.0;
  for (int i = 0; i < model.dim(); ++i) {
    if (sel.active(i)) pdot += z.p[i] * gp[i];
  }
  d.dS = pdot - model.value(z);
  return d;
}

PhasePoint advance(const PhasePoint& z, const Deriv& k, double h) {
  PhasePoint out = z;
  for (int i = 0; i < kMaxDim; ++i) {
    out.q[i] += h * k.dq[i];
    out.p[i] += h * k.dp[i];
  }
  return out;
}

struct Rk4Result {
  PhasePoint z;
  double dS;
};

Rk4Result rk4_full(const HamiltonianModel& model, const PhasePoint& z, double dt, DofSelector sel) {
  const Deriv k1 = flow_rhs(model, z, sel);
  const Deriv k2 = flow_rhs(model, advance(z, k1, dt / 2), sel);
  const Deriv k3 = flow_rhs(model, advance(z, k2, dt / 2), sel);
  const Deriv k4 = flow_rhs(model, advance(z, k3, dt), sel);
  PhasePoint out = z;
  for (int i = 0; i < kMaxDim; ++i) {
    out.q[i] += dt / 6.0 * (k1.dq[i] + 2 * k2.dq[i] + 2 * k3.dq[i] + k4.dq[i]);
    out.p[i] += dt / 6.0 * (k1.dp[i] + 2 * k2.dp[i] + 2 * k3.dp[i] + k4.dp[i]);
  }
  const double dS = dt / 6.0 * (k1.dS + 2 * k2.dS + 2 * k3.dS + k4.dS);
  return {out, dS};
}

}  // namespace

PhasePoint rk4_step(const HamiltonianModel& model, const PhasePoint& z, double dt, DofSelector sel) {
  return rk4_full(model, z, dt, sel).z;
}

Trajectory integrate_trajectory(const HamiltonianModel& model, const PhasePoint& z0, double t_final,
                                const FlowConfig& cfg, DofSelector sel) {
  require(t_final > 0.0, ErrorCode::InvalidExtent, "integrate_trajectory needs t_final > 0");
  require(cfg.dt > 0.0 && cfg.energy_tol > 0.0, ErrorCode::InvalidExtent,
          "flow config needs dt > 0 and energy_tol > 0");
  const int n_steps = std::max(1, static_cast<int>(std::ceil(t_final / cfg.dt - 1e-12)));
  const double dt = t_final / n_steps;

  Trajectory traj;
  traj.energy = model.value(z0);
  traj.times.reserve(n_steps + 1);
  traj.points.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.points.push_back(z0);

  const double e_scale = std::max(std::abs(traj.energy), 1.0);
  PhasePoint z = z0;
  for (int k = 0; k < n_steps; ++k) {
    const Rk4Result r = rk4_full(model, z, dt, sel);
    z = r.z;
    traj.action += r.dS;
    traj.times.push_back((k + 1) * dt);
    traj.points.push_back(z);
    const double drift = std::abs(model.value(z) - traj.energy);
    require(drift <= cfg.energy_tol * e_scale, ErrorCode::EnergyDrift,
            "energy drift " + std::to_string(drift) + " exceeds tolerance; reduce dt");
  }
  return traj;
}

double accumulate_action(const Trajectory& traj, const HamiltonianModel& model) {
  const std::size_t n = traj.points.size();
  require(n >= 3, ErrorCode::TooFewSamples, "Simpson action needs at least 3 samples");
  const double h = traj.times[1] - traj.times[0];
  auto lag = [&](std::size_t k) { return model.lagrangian(traj.points[k]); };
  // Composite Simpson; odd interval count ends with one 3/8 panel.
  const std::size_t intervals = n - 1;
  const std::size_t simpson_end = intervals % 2 == 0 ? n - 1 : n - 4;
  double s = 0.0;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2) {
    s += h / 3.0 * (lag(k) + 4.0 * lag(k + 1) + lag(k + 2));
  }
  if (intervals % 2 != 0) {
    const std::size_t k = n - 4;
    s += 3.0 * h / 8.0 * (lag(k) + 3.0 * lag(k + 1) + 3.0 * lag(k + 2) + lag(k + 3));
  }
  return s;
}

double detect_period(const HamiltonianModel& model, const PhasePoint& z0, const FlowConfig& cfg,
                     double t_max, DofSelector sel, double capture) {
  Vec v0q, v0p;
  model.velocity(z0, v0q, v0p);
  double vnorm = 0.0;
  for (int i = 0; i < model.dim(); ++i) {
    if (!sel.active(i)) { v0q[i] = 0.0; v0p[i] = 0.0; }
    vnorm += v0q[i] * v0q[i] + v0p[i] * v0p[i];
  }
  vnorm = std::sqrt(vnorm);
  require(vnorm > 0.0, ErrorCode::StationaryPoint, "orbit start is a stationary point");

  auto section = [&](const PhasePoint& z) {
    double s = 0.0;
    for (int i = 0; i < model.dim(); ++i) {
      s += (z.q[i] - z0.q[i]) * v0q[i] + (z.p[i] - z0.p[i]) * v0p[i];
    }
    return s / vnorm;
  };
  auto distance = [&](const PhasePoint& z) {
    double s = 0.0;
    for (int i = 0; i < model.dim(); ++i) {
      s += (z.q[i] - z0.q[i]) * (z.q[i] - z0.q[i]) + (z.p[i] - z0.p[i]) * (z.p[i] - z0.p[i]);
    }
    return std::sqrt(s);
  };

  const double dt = cfg.dt;
  PhasePoint z = z0;
  double t = 0.0;
  double g_prev = 0.0;
  while (t < t_max) {
    const PhasePoint z_next = rk4_step(model, z, dt, sel);
    const double g_next = section(z_next);
    // positive crossing of the section plane after leaving the neighborhood
    if (t > dt && g_prev < 0.0 && g_next >= 0.0) {
      double lo = 0.0, hi = dt;
      PhasePoint za = z;
      for (int it = 0; it < 80 && (hi - lo) > 1e-15 * std::max(1.0, t); ++it) {
        const double mid = 0.5 * (lo + hi);
        const PhasePoint zm = rk4_step(model, za, mid - lo, sel);
        if (section(zm) < 0.0) {
          lo = mid;
          za = zm;
        } else {
          hi = mid;
        }
      }
      const PhasePoint z_cross = rk4_step(model, za, hi - lo, sel);
      if (distance(z_cross) <= capture) return t + hi;
    }
    g_prev = g_next;
    z = z_next;
    t += dt;
  }
  fail(ErrorCode::NoClosedOrbit, "no closed orbit found within t_max = " + std::to_string(t_max));
}

PhaseField poisson_bracket(const PhaseField& B, const PhaseField& C) {
  require(B.grid().same_layout(C.grid()), ErrorCode::GridMismatch, "poisson_bracket needs a shared grid");
  const PhaseGrid& g = B.grid();
  PhaseField out(g, B.time_tag());
  for (int i = 0; i < g.dim(); ++i) {
    const auto dBq = axis_derivative(g, B.values(), i);
    const auto dBp = axis_derivative(g, B.values(), g.dim() + i);
    const auto dCq = axis_derivative(g, C.values(), i);
    const auto dCp = axis_derivative(g, C.values(), g.dim() + i);
    for (std::size_t f = 0; f < g.size(); ++f) {
      out[f] += dBq[f] * dCp[f] - dBp[f] * dCq[f];
    }
  }
  return out;
}

namespace {

template <class FieldT>
FieldT bracket_with_model(const FieldT& B, const HamiltonianModel& model) {
  const PhaseGrid& g = B.grid();
  require(g.dim() == model.dim(), ErrorCode::GridMismatch, "field and model dimensions differ");
  FieldT out(g, B.time_tag());
  for (int i = 0; i < g.dim(); ++i) {
    const auto dBq = axis_derivative(g, B.values(), i);
    const auto dBp = axis_derivative(g, B.values(), g.dim() + i);
    parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t f = begin; f < end; ++f) {
        const PhasePoint z = g.point(f);
        const Vec gq = model.grad_q(z);
        const Vec gp = model.grad_p(z);
        out[f] += dBq[f] * gp[i] - dBp[f] * gq[i];
      }
    });
  }
  return out;
}

}  // namespace

PhaseField poisson_bracket(const PhaseField& B, const HamiltonianModel& model) {
  return bracket_with_model<PhaseField>(B, model);
}

RealField poisson_bracket(const RealField& B, const HamiltonianModel& model) {
  return bracket_with_model<RealField>(B, model);
}

namespace {

// Lagrange weights for integer-offset nodes around the base cell.
void lagrange_row(double t, int stencil, double* w) {
  const int lo = stencil == 4 ? -1 : -2;
  for (int a = 0; a < stencil; ++a) {
    double prod = 1.0;
    for (int b = 0; b < stencil; ++b) {
      if (b == a) continue;
      prod *= (t - (lo + b)) / static_cast<double>(a - b);
    }
    w[a] = prod;
  }
}

}  // namespace

TransportPlan::TransportPlan(const PhaseGrid& grid, const HamiltonianModel& model, double dt,
                             InterpOrder order)
    : grid_(grid), dt_(dt), order_(order), stencil_(order == InterpOrder::Cubic ? 4 : 6) {
  require(grid.dim() == model.dim(), ErrorCode::GridMismatch, "grid and model dimensions differ");
  const std::size_t n = grid.size();
  const int na = grid.axes_count();
  std::size_t size = 1;
  for (int a = na - 1; a >= 0; --a) {
    strides_[a] = size;
    size *= static_cast<std::size_t>(grid.axis(a).count);
  }
  foot_.resize(n);
  seg_action_.resize(n);
  base_.resize(n * na);
  weights_.resize(n * na * stencil_);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const PhasePoint z = grid.point(f);
      // Two half steps of the reversed flow give the midpoint and foot point.
      const PhasePoint mid = rk4_step(model, z, -dt / 2);
      const PhasePoint z0 = rk4_step(model, mid, -dt / 2);
      foot_[f] = z0;
      seg_action_[f] =
          dt / 6.0 * (model.lagrangian(z0) + 4.0 * model.lagrangian(mid) + model.lagrangian(z));
      for (int a = 0; a < na; ++a) {
        const AxisSpec& ax = grid.axis(a);
        const double coord = a < grid.dim() ? z0.q[a] : z0.p[a - grid.dim()];
        const double g = (coord - ax.min) / ax.spacing();
        const int cell = static_cast<int>(std::floor(g));
        base_[f * na + a] = cell;
        lagrange_row(g - cell, stencil_, &weights_[(f * na + a) * stencil_]);
      }
    }
  });
}

template <class T>
void TransportPlan::advect_impl(const std::vector<T>& in, std::vector<T>& out) const {
  const int na = grid_.axes_count();
  const int K = stencil_;
  const int lo = K == 4 ? -1 : -2;
  parallel_for(in.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const std::int32_t* base = &base_[f * na];
      const double* w = &weights_[f * na * K];
      // fast path: the whole stencil box lies inside the grid
      bool inside = true;
      for (int a = 0; a < na; ++a) {
        if (base[a] + lo < 0 || base[a] + lo + K - 1 >= grid_.axis(a).count) {
          inside = false;
          break;
        }
      }
      T acc{};
      if (na == 2) {
        const std::size_t s0 = strides_[0];
        if (inside) {
          const T* row0 = in.data() + static_cast<std::size_t>(base[0] + lo) * s0 + (base[1] + lo);
          for (int i = 0; i < K; ++i) {
            T inner{};
            const T* row = row0 + static_cast<std::size_t>(i) * s0;
            for (int j = 0; j < K; ++j) inner += w[K + j] * row[j];
            acc += w[i] * inner;
          }
        } else {
          for (int i = 0; i < K; ++i) {
            const int qi = base[0] + lo + i;
            if (qi < 0 || qi >= grid_.axis(0).count) continue;
            T inner{};
            for (int j = 0; j < K; ++j) {
              const int pj = base[1] + lo + j;
              if (pj < 0 || pj >= grid_.axis(1).count) continue;
              inner += w[K + j] * in[static_cast<std::size_t>(qi) * s0 + pj];
            }
            acc += w[i] * inner;
          }
        }
      } else {
        // generic tensor product (2D models: 4 axes)
        std::array<int, 2 * kMaxDim> off{};
        while (true) {
          double weight = 1.0;
          std::size_t flat = 0;
          bool ok = true;
          for (int a = 0; a < na; ++a) {
            const int idx = base[a] + lo + off[a];
            if (idx < 0 || idx >= grid_.axis(a).count) { ok = false; break; }
            weight *= w[a * K + off[a]];
            flat += static_cast<std::size_t>(idx) * strides_[a];
          }
          if (ok) acc += weight * in[flat];
          int a = na - 1;
          for (; a >= 0; --a) {
            if (++off[a] < K) break;
            off[a] = 0;
          }
          if (a < 0) break;
        }
      }
      out[f] = acc;
    }
  });
}

void TransportPlan::advect(const RealField& f, RealField& out) const {
  advect_impl(f.values(), out.values());
}

void TransportPlan::advect(const PhaseField& f, PhaseField& out) const {
  advect_impl(f.values(), out.values());
}

void TransportPlan::advect_action(const RealField& S, RealField& out) const {
  advect_impl(S.values(), out.values());
  const double* seg = seg_action_.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += seg[i];
}

DensityField liouville_step(const DensityField& rho, const HamiltonianModel& model, double dt,
                            int n_steps, const FlowConfig& cfg, double eps) {
  require(n_steps >= 0 && dt > 0.0, ErrorCode::InvalidExtent, "liouville_step needs dt > 0, n_steps >= 0");
  {
    const double m = boundary_mass(rho);
    require(m <= eps, ErrorCode::OutflowDetected,
            "density boundary mass " + std::to_string(m) + " exceeds " + std::to_string(eps));
  }
  const TransportPlan plan(rho.grid(), model, dt, cfg.interp);
  RealField cur = rho.as_real();
  RealField next(rho.grid());
  for (int k = 0; k < n_steps; ++k) {
    plan.advect(cur, next);
    std::swap(cur, next);
    if ((k & 15) == 15) {
      const double m = boundary_mass(cur);
      require(m <= eps, ErrorCode::OutflowDetected,
              "characteristics carry mass into the boundary ring (" + std::to_string(m) + ")");
    }
  }
  DensityField out = DensityField::from_values(rho.grid(), std::move(cur.values()),
                                               rho.time_tag() + n_steps * dt);
  const double m = boundary_mass(out);
  require(m <= eps, ErrorCode::OutflowDetected,
          "characteristics carry mass into the boundary ring (" + std::to_string(m) + ")");
  return out;
}

}  // namespace phaseflow
