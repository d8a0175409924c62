#pragma once

#include <optional>
#include <vector>

#include "phaseflow/field.hpp"
#include "phaseflow/hamiltonian.hpp"
#include "phaseflow/interpolate.hpp"

namespace phaseflow {

/// Fixed-step classical integration parameters. The integrator is 4th-order
/// Runge-Kutta; energy drift beyond energy_tol raises EnergyDrift.
struct FlowConfig {
  double dt = 1e-3;
  double energy_tol = 1e-6;
  InterpOrder interp = InterpOrder::Quintic;
};

/// Time-sampled classical path with the action integral co-integrated.
struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;
  double action = 0.0;  // RK4-accumulated integral of p . dH/dp - H
  double energy = 0.0;  // H at the initial point
};

/// Which (q_i, p_i) pairs the flow moves; the rest stay frozen. dof = -1
/// flows everything (the full Hamiltonian flow).
struct DofSelector {
  int dof = -1;
  bool active(int i) const { return dof < 0 || dof == i; }
};

/// One RK4 step of the (possibly per-DOF) Hamiltonian flow.
PhasePoint rk4_step(const HamiltonianModel& model, const PhasePoint& z, double dt,
                    DofSelector sel = {});

Trajectory integrate_trajectory(const HamiltonianModel& model, const PhasePoint& z0, double t_final,
                                const FlowConfig& cfg, DofSelector sel = {});

/// Simpson quadrature of p . dH/dp - H over stored samples. Needs an odd
/// sample count >= 3 (even step count); throws TooFewSamples otherwise.
double accumulate_action(const Trajectory& traj, const HamiltonianModel& model);

/// Period of the closed orbit through z0: first return to within `capture` of
/// the start with a positive crossing of the section through z0, refined by
/// bisection on the dense output. Throws NoClosedOrbit if none found by t_max.
double detect_period(const HamiltonianModel& model, const PhasePoint& z0, const FlowConfig& cfg,
                     double t_max, DofSelector sel = {}, double capture = 1e-8);

/// {B, C} via 4th-order central differences on a shared grid; fields are
/// zero-extended past the boundary (interior-supported precondition).
PhaseField poisson_bracket(const PhaseField& B, const PhaseField& C);

/// {B, H} with analytic model derivatives for H.
PhaseField poisson_bracket(const PhaseField& B, const HamiltonianModel& model);
RealField poisson_bracket(const RealField& B, const HamiltonianModel& model);

/// Semi-Lagrangian Liouville transport of rho over n_steps of size dt.
/// Throws OutflowDetected when boundary mass grows past eps during the run.
DensityField liouville_step(const DensityField& rho, const HamiltonianModel& model, double dt,
                            int n_steps, const FlowConfig& cfg = {},
                            double eps = kDefaultBoundaryEps);

}  // namespace phaseflow
