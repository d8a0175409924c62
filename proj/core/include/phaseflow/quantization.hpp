#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "phaseflow/classical.hpp"
#include "phaseflow/field.hpp"

namespace phaseflow {

/// One semiclassical level. For separable 2D models both quantum numbers are
/// used; 1D levels keep n[1] = 0.
struct SpectrumLevel {
  std::array<int, 2> n{0, 0};
  double energy = 0.0;
  std::optional<double> exact;
  std::optional<double> rel_error;
};

struct SpectrumResult {
  int dim = 1;
  std::vector<SpectrumLevel> levels;  // sorted by energy
};

/// J_i(E) = closed-orbit integral of p_i dH/dp_i dt for the per-DOF flow with
/// the other pairs frozen at the potential minimum. E at the minimum gives 0.
double action_integral(const HamiltonianModel& model, double E, int dof = 0,
                       const FlowConfig& cfg = {});

/// Solve J_i(E) = n_i h per degree of freedom by bisection (h = 2 pi hbar) and
/// combine separable levels. Levels are exact at the potential minimum for n = 0.
SpectrumResult bohr_sommerfeld_levels(const HamiltonianModel& model, int n_max, double hbar = 1.0,
                                      const FlowConfig& cfg = {});

struct WindingResult {
  int winding = 0;
  double raw = 0.0;  // pre-rounding total phase change / 2 pi
};

/// Net change of arg(eta) along the closed classical orbit of energy E,
/// sampled in the flow direction and unwrapped. A degenerate orbit (E at the
/// potential minimum) winds zero by definition.
WindingResult phase_winding(const PhaseField& eta, const HamiltonianModel& model, double E,
                            const FlowConfig& cfg = {}, int n_samples = 4096,
                            double amp_floor_rel = 1e-8);

/// Coordinate transformation Q = f(q) with the induced momentum map
/// p_i = sum_j (df_j / dq_i) P_j of the generating function F = sum f_i(q) P_i.
struct CoordinateTransform {
  std::string name;
  int dim = 1;
  std::function<Vec(const Vec&)> forward;
  /// jacobian(q)[i][j] = df_i / dq_j
  std::function<std::array<Vec, kMaxDim>(const Vec&)> jacobian;
};

CoordinateTransform identity_transform(int dim);
CoordinateTransform scaling_transform(double factor);  // 1D: Q = factor q
CoordinateTransform polar_transform();                 // 2D: Q = (r, theta)

struct InvarianceReport {
  double max_abs_discrepancy = 0.0;
  double max_rel_discrepancy = 0.0;
};

/// Check that p . dH/dp keeps its value under the transform: compares the
/// original-coordinate value against sum_i P_i dH~/dP_i with the P-derivative
/// taken by central differences of H(q, p(Q, P)).
InvarianceReport pdhdp_invariance_check(const HamiltonianModel& model,
                                        const CoordinateTransform& xf,
                                        std::span<const PhasePoint> points);

/// A constant of the motion with analytic derivatives.
struct ConstantOfMotion {
  std::string name;
  std::function<double(const PhasePoint&)> value;
  std::function<Vec(const PhasePoint&)> grad_q;
  std::function<Vec(const PhasePoint&)> grad_p;
};

/// Per-DOF energy h_i(q_i, p_i) of a separable model.
ConstantOfMotion dof_energy_constant(const HamiltonianModel& model, int dof);
/// The coordinate function q_i itself (not conserved; negative control).
ConstantOfMotion coordinate_constant(int axis);

struct SeparabilityReport {
  double max_abs = 0.0;
  /// term[i][j] = max |{c_i, H}_j| over the sampled points
  std::array<std::array<double, kMaxDim>, kMaxDim> term{};
};

/// Evaluate {c_i, H}_j for all pairs at pseudo-random points in a box.
SeparabilityReport separability_check(const HamiltonianModel& model,
                                      std::span<const ConstantOfMotion> constants, int n_samples,
                                      unsigned seed, double box_half_width = 2.0);

}  // namespace phaseflow
