#pragma once

#include "phaseflow/grid.hpp"

namespace phaseflow {

enum class ModelKind { Harmonic, Free, Quartic, Anisotropic2d };

/// Classical Hamiltonian with analytic gradient and Hessian. All supported
/// kinds are autonomous and of kinetic-plus-potential form.
class HamiltonianModel {
 public:
  static HamiltonianModel harmonic(double mass, double omega);
  static HamiltonianModel free_particle(double mass);
  static HamiltonianModel quartic(double mass, double lambda);
  static HamiltonianModel anisotropic2d(double mass, double omega1, double omega2);

  ModelKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double mass() const { return mass_; }
  double omega(int i = 0) const { return omega_[i]; }
  double lambda() const { return lambda_; }

  double value(const PhasePoint& z) const;
  Vec grad_q(const PhasePoint& z) const;
  Vec grad_p(const PhasePoint& z) const;
  double d2_qq(const PhasePoint& z, int i, int j) const;
  double d2_pp(const PhasePoint& z, int i, int j) const;
  /// d^2 H / dq_i dp_j (zero for every supported kind).
  double d2_qp(const PhasePoint& z, int i, int j) const;

  /// Phase-space velocity (dq/dt, dp/dt) of Hamilton's equations.
  void velocity(const PhasePoint& z, Vec& dq, Vec& dp) const;

  /// Lagrangian value p . dH/dp - H along the flow.
  double lagrangian(const PhasePoint& z) const;

  bool has_potential_form() const { return kind_ != ModelKind::Free; }
  double potential(const Vec& x) const;

  /// Minimum of H over phase space (0 for every supported kind).
  double min_energy() const { return 0.0; }

  /// True when the Hamiltonian is confining in the given degree of freedom.
  bool confining(int dof) const;

  const char* name() const;

 private:
  ModelKind kind_ = ModelKind::Harmonic;
  int dim_ = 1;
  double mass_ = 1.0;
  std::array<double, kMaxDim> omega_{1.0, 1.0};
  double lambda_ = 1.0;
};

}  // namespace phaseflow
