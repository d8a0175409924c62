#pragma once

#include <cmath>
#include <functional>

#include "phaseflow/field.hpp"
#include "phaseflow/hamiltonian.hpp"

namespace phaseflow {

/// Gaussian wavepacket family u_qp(x) = u0(x - q) exp(i p.(x - q) / hbar),
/// u0(x) = (2 pi sigma^2)^(-D/4) exp(-|x|^2 / 4 sigma^2), optionally carrying
/// an x-independent gauge phase phi(q, p, t).
struct WavepacketFamily {
  double sigma = 1.0 / std::numbers::sqrt2;  // coherent-state width for m = omega = hbar = 1
  double hbar = 1.0;
  /// Optional gauge phase phi(q, p, t); empty means no gauge.
  std::function<double(const PhasePoint&, double)> gauge;

  void validate() const {
    require(sigma > 0.0 && hbar > 0.0, ErrorCode::InvalidExtent, "wavepacket family needs sigma > 0, hbar > 0");
  }
};

/// Family with the coherent-state width sigma = zeta / sqrt(2) for the given
/// harmonic parameters (the alpha -> 1 limit, where the analytic eta_n is exact).
WavepacketFamily coherent_family(double mass, double omega, double hbar);

/// phi = -H(q, p) t / hbar.
std::function<double(const PhasePoint&, double)> energy_gauge(const HamiltonianModel& model, double hbar);

/// Envelope u0 at displacement r = x - q (D-dimensional).
double u0_envelope(const WavepacketFamily& family, const Vec& r, int dim);

/// u_qp(x) including the momentum phase and any gauge phase at time t.
Complex wavepacket_value(const WavepacketFamily& family, const PhasePoint& z, const Vec& x, int dim,
                         double t = 0.0);

/// Sample u_qp on a position grid. Throws GridTooSmall when the Gaussian tail
/// mass at the grid boundary exceeds eps.
PositionWavefunction make_wavepacket(const WavepacketFamily& family, const PhasePoint& z,
                                     const PositionGrid& xgrid, double t = 0.0,
                                     double eps = kDefaultBoundaryEps);

}  // namespace phaseflow
