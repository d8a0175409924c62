#pragma once

#include "phaseflow/field.hpp"
#include "phaseflow/hamiltonian.hpp"

namespace phaseflow {

/// zeta = sqrt(hbar / m omega), the harmonic-oscillator length scale.
double ho_zeta(double mass, double omega, double hbar);

/// Exact harmonic-oscillator eigenstate psi_n on a position grid,
/// psi_n(x) = (m w / (2^(2n) (n!)^2 pi hbar))^(1/4) H_n(x / zeta) e^(-x^2 / 2 zeta^2).
PositionWavefunction ho_eigenstate(int n, double mass, double omega, double hbar,
                                   const PositionGrid& xgrid);

/// Closed-form phase-space eigenstate for the coherent family sigma = zeta / sqrt(2):
///   eta_n(q, p) = (1/sqrt(n!)) (m w / 2 hbar)^(n/2) (q - i p / m w)^n
///                 * exp[-(1 / 2 hbar w)(m w^2 q^2 / 2 - i w p q + p^2 / 2 m)].
/// Throws GridTooSmall when the grid does not hold the state's support.
PhaseField ho_eigen_eta(int n, double mass, double omega, double hbar, const PhaseGrid& grid,
                        double eps = kDefaultBoundaryEps);

/// Pointwise value of the eta_n formula above.
Complex ho_eigen_eta_value(int n, double mass, double omega, double hbar, const PhasePoint& z);

}  // namespace phaseflow
