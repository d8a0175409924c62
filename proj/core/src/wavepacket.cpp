#include "phaseflow/wavepacket.hpp"

#include <cmath>
#include <numbers>

namespace phaseflow {

WavepacketFamily coherent_family(double mass, double omega, double hbar) {
  WavepacketFamily f;
  f.hbar = hbar;
  f.sigma = std::sqrt(hbar / (2.0 * mass * omega));  // zeta / sqrt(2)
  return f;
}

std::function<double(const PhasePoint&, double)> energy_gauge(const HamiltonianModel& model, double hbar) {
  return [model, hbar](const PhasePoint& z, double t) { return -model.value(z) * t / hbar; };
}

double u0_envelope(const WavepacketFamily& family, const Vec& r, int dim) {
  const double s2 = family.sigma * family.sigma;
  double r2 = 0.0;
  for (int i = 0; i < dim; ++i) r2 += r[i] * r[i];
  const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25 * dim);
  return norm * std::exp(-r2 / (4.0 * s2));
}

Complex wavepacket_value(const WavepacketFamily& family, const PhasePoint& z, const Vec& x, int dim,
                         double t) {
  Vec r{};
  double phase = 0.0;
  for (int i = 0; i < dim; ++i) {
    r[i] = x[i] - z.q[i];
    phase += z.p[i] * r[i];
  }
  phase /= family.hbar;
  if (family.gauge) phase += family.gauge(z, t);
  return u0_envelope(family, r, dim) * std::polar(1.0, phase);
}

PositionWavefunction make_wavepacket(const WavepacketFamily& family, const PhasePoint& z,
                                     const PositionGrid& xgrid, double t, double eps) {
  family.validate();
  PositionWavefunction psi(xgrid, t);
  for (std::size_t i = 0; i < xgrid.size(); ++i) {
    psi[i] = wavepacket_value(family, z, xgrid.point(i), xgrid.dim(), t);
  }
  const double tail = boundary_mass(psi);
  require(tail <= eps, ErrorCode::GridTooSmall,
          "wavepacket tail mass " + std::to_string(tail) + " at grid boundary exceeds " +
              std::to_string(eps));
  return psi;
}

}  // namespace phaseflow
