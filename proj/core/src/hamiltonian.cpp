#include "phaseflow/hamiltonian.hpp"

#include <cmath>

namespace phaseflow {

HamiltonianModel HamiltonianModel::harmonic(double mass, double omega) {
  require(mass > 0 && omega > 0, ErrorCode::InvalidExtent, "harmonic model needs m > 0, omega > 0");
  HamiltonianModel h;
  h.kind_ = ModelKind::Harmonic;
  h.dim_ = 1;
  h.mass_ = mass;
  h.omega_ = {omega, 0.0};
  return h;
}

HamiltonianModel HamiltonianModel::free_particle(double mass) {
  require(mass > 0, ErrorCode::InvalidExtent, "free model needs m > 0");
  HamiltonianModel h;
  h.kind_ = ModelKind::Free;
  h.dim_ = 1;
  h.mass_ = mass;
  return h;
}

HamiltonianModel HamiltonianModel::quartic(double mass, double lambda) {
  require(mass > 0 && lambda > 0, ErrorCode::InvalidExtent, "quartic model needs m > 0, lambda > 0");
  HamiltonianModel h;
  h.kind_ = ModelKind::Quartic;
  h.dim_ = 1;
  h.mass_ = mass;
  h.lambda_ = lambda;
  return h;
}

HamiltonianModel HamiltonianModel::anisotropic2d(double mass, double omega1, double omega2) {
  require(mass > 0 && omega1 > 0 && omega2 > 0, ErrorCode::InvalidExtent,
          "anisotropic2d model needs m > 0, omega_i > 0");
  HamiltonianModel h;
  h.kind_ = ModelKind::Anisotropic2d;
  h.dim_ = 2;
  h.mass_ = mass;
  h.omega_ = {omega1, omega2};
  return h;
}

double HamiltonianModel::value(const PhasePoint& z) const {
  double kinetic = 0.0;
  for (int i = 0; i < dim_; ++i) kinetic += z.p[i] * z.p[i];
  kinetic /= 2.0 * mass_;
  return kinetic + potential(z.q);
}

double HamiltonianModel::potential(const Vec& x) const {
  switch (kind_) {
    case ModelKind::Harmonic:
      return 0.5 * mass_ * omega_[0] * omega_[0] * x[0] * x[0];
    case ModelKind::Free:
      return 0.0;
    case ModelKind::Quartic:
      return lambda_ * x[0] * x[0] * x[0] * x[0];
    case ModelKind::Anisotropic2d:
      return 0.5 * mass_ * (omega_[0] * omega_[0] * x[0] * x[0] + omega_[1] * omega_[1] * x[1] * x[1]);
  }
  return 0.0;
}

Vec HamiltonianModel::grad_q(const PhasePoint& z) const {
  Vec g{};
  switch (kind_) {
    case ModelKind::Harmonic:
      g[0] = mass_ * omega_[0] * omega_[0] * z.q[0];
      break;
    case ModelKind::Free:
      break;
    case ModelKind::Quartic:
      g[0] = 4.0 * lambda_ * z.q[0] * z.q[0] * z.q[0];
      break;
    case ModelKind::Anisotropic2d:
      g[0] = mass_ * omega_[0] * omega_[0] * z.q[0];
      g[1] = mass_ * omega_[1] * omega_[1] * z.q[1];
      break;
  }
  return g;
}

Vec HamiltonianModel::grad_p(const PhasePoint& z) const {
  Vec g{};
  for (int i = 0; i < dim_; ++i) g[i] = z.p[i] / mass_;
  return g;
}

double HamiltonianModel::d2_qq(const PhasePoint& z, int i, int j) const {
  if (i != j) return 0.0;
  switch (kind_) {
    case ModelKind::Harmonic:
      return mass_ * omega_[0] * omega_[0];
    case ModelKind::Free:
      return 0.0;
    case ModelKind::Quartic:
      return 12.0 * lambda_ * z.q[0] * z.q[0];
    case ModelKind::Anisotropic2d:
      return mass_ * omega_[i] * omega_[i];
  }
  return 0.0;
}

double HamiltonianModel::d2_pp(const PhasePoint&, int i, int j) const {
  return i == j ? 1.0 / mass_ : 0.0;
}

double HamiltonianModel::d2_qp(const PhasePoint&, int, int) const { return 0.0; }

void HamiltonianModel::velocity(const PhasePoint& z, Vec& dq, Vec& dp) const {
  dq = grad_p(z);
  const Vec gq = grad_q(z);
  for (int i = 0; i < dim_; ++i) dp[i] = -gq[i];
  for (int i = dim_; i < kMaxDim; ++i) { dq[i] = 0.0; dp[i] = 0.0; }
}

double HamiltonianModel::lagrangian(const PhasePoint& z) const {
  const Vec gp = grad_p(z);
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += z.p[i] * gp[i];
  return s - value(z);
}

bool HamiltonianModel::confining(int) const {
  return kind_ != ModelKind::Free;
}

const char* HamiltonianModel::name() const {
  switch (kind_) {
    case ModelKind::Harmonic: return "harmonic";
    case ModelKind::Free: return "free";
    case ModelKind::Quartic: return "quartic";
    case ModelKind::Anisotropic2d: return "anisotropic2d";
  }
  return "unknown";
}

}  // namespace phaseflow
