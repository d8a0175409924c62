#pragma once

#include <vector>

#include "phaseflow/field.hpp"
#include "phaseflow/hamiltonian.hpp"

namespace phaseflow {

struct EigenPair {
  double energy = 0.0;
  PositionWavefunction state;
};

/// Lowest k eigenpairs of the Fourier-spectral discretization of
/// H = p^2/2m + V(x) on the (periodically extended) grid box, ordered by
/// energy and unit-normalized under grid quadrature. A half-resolution solve
/// estimates the discretization error; GridTooCoarse when the estimate
/// exceeds 1e-6 of the smallest level spacing.
std::vector<EigenPair> eigensolve(const HamiltonianModel& model, const PositionGrid& xgrid, int k,
                                  double hbar = 1.0);

/// Split-step Fourier propagation of psi under H = p^2/2m + V(x).
PositionWavefunction schrodinger_evolve(const PositionWavefunction& psi,
                                        const HamiltonianModel& model, double t, double dt,
                                        double hbar = 1.0, double eps = kDefaultBoundaryEps);

}  // namespace phaseflow
