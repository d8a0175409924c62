#pragma once

#include <memory>
#include <utility>

#include "phaseflow/classical.hpp"
#include "phaseflow/wavepacket.hpp"

namespace phaseflow {

enum class GaugeKind { None, Energy, Kvn };

/// Gauge phase selection for the evolution equations. For the KvN gauge the
/// accumulated-action table S(q, p, t) can be attached for diagnostics and
/// for the gauged time-independent residual.
struct GaugeSpec {
  GaugeKind kind = GaugeKind::None;
  std::shared_ptr<const RealField> action_table;
};

/// Hamilton's principal function S(q, p, t) of the trajectory arriving at
/// (q, p) at time t from t = 0, by per-point characteristic integration.
RealField kvn_action_table(const HamiltonianModel& model, const PhaseGrid& grid, double t,
                           const FlowConfig& cfg = {});

GaugeSpec make_kvn_gauge(const HamiltonianModel& model, const PhaseGrid& grid, double t,
                         const FlowConfig& cfg = {});

/// Semi-Lagrangian propagation of the first-order transport equation
///   d eta / dt = (i/hbar)(p . dH/dp - H) eta - {eta, H}.
/// Each step back-tracks one characteristic segment, interpolates, and applies
/// the Simpson-accumulated segment action as a phase. The dynamical phase is
/// carried in a separate action table so the KvN and ungauged runs share the
/// same amplitude transport exactly.
///   gauge none:   phase factor exp(i S / hbar)
///   gauge energy: phi = -H t / hbar, leaving source (i/hbar) p . dH/dp
///   gauge kvn:    phi = S / hbar, leaving pure advection d eta/dt = -{eta, H}
PhaseField se_evolve(const PhaseField& eta, const HamiltonianModel& model, double t_final,
                     const FlowConfig& cfg, const GaugeSpec& gauge = {}, double hbar = 1.0,
                     double eps = kDefaultBoundaryEps);

/// The second-order correction terms of the expanded evolution equation (the
/// contribution beyond the first-order right-hand side), with analytic model
/// Hessians and 4th-order finite differences for the eta derivatives:
///   [ -(i/2 hbar) p_i p_j H_{p_i p_j} - (1/2) H_{q_i p_i} ] eta
///   + p_i [ H_{p_i p_j} eta_{q_j} - H_{p_i q_j} eta_{p_j} ]
///   + (i hbar / 2) [ H_{p_i p_j} eta_{q_i q_j} - 2 H_{p_i q_j} eta_{q_i p_j}
///                    + H_{q_i q_j} eta_{p_i p_j} ].
PhaseField se_rhs_order2(const PhaseField& eta, const HamiltonianModel& model, double hbar = 1.0);

struct ResidualReport {
  PhaseField residual;
  double norm = 0.0;           // L2 norm of the residual field
  double relative_norm = 0.0;  // norm / ||eta|| (RMS over unmasked points for the phase residual)
  std::size_t valid_count = 0;
};

/// Time-independent residual E eta - (H - p . dH/dp) eta - (hbar/i){eta, H};
/// order 2 additionally subtracts i hbar times the second-order terms. When a
/// KvN gauge with an action table is supplied, the gauge term {S, H} eta is
/// included (the gauged equation keeps H - p . dH/dp uncancelled).
ResidualReport tise_residual(const PhaseField& eta, double E, const HamiltonianModel& model,
                             int order, double hbar = 1.0, const GaugeSpec* gauge = nullptr);

/// Real and imaginary parts of the time-independent equation in amplitude and
/// phase variables: r_A = {A, H} with A = |eta|, and
/// r_beta = E - H + p . dH/dp - {beta, H} with beta = hbar arg(eta) locally
/// unwrapped. Points with |eta| below floor_rel * max|eta| are masked; the
/// phase residual's relative norm is the RMS of r_beta over unmasked points.
std::pair<ResidualReport, ResidualReport> amplitude_phase_residuals(
    const PhaseField& eta, double E, const HamiltonianModel& model, double hbar = 1.0,
    double floor_rel = 1e-8);

}  // namespace phaseflow
