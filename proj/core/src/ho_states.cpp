#include "phaseflow/ho_states.hpp"

#include <cmath>
#include <numbers>

#include "phaseflow/hermite.hpp"

namespace phaseflow {

double ho_zeta(double mass, double omega, double hbar) {
  return std::sqrt(hbar / (mass * omega));
}

PositionWavefunction ho_eigenstate(int n, double mass, double omega, double hbar,
                                   const PositionGrid& xgrid) {
  require(xgrid.dim() == 1, ErrorCode::InvalidExtent, "ho_eigenstate is one-dimensional");
  require(n >= 0 && n <= kHermiteMaxDegree, ErrorCode::DegreeTooHigh, "ho_eigenstate needs 0 <= n <= 30");
  const double zeta = ho_zeta(mass, omega, hbar);
  // norm = (m w / pi hbar)^(1/4) / sqrt(2^n n!)
  double log_norm = 0.25 * std::log(mass * omega / (std::numbers::pi * hbar));
  for (int k = 1; k <= n; ++k) log_norm -= 0.5 * (std::log(2.0) + std::log(static_cast<double>(k)));
  const double norm = std::exp(log_norm);
  PositionWavefunction psi(xgrid);
  for (std::size_t i = 0; i < xgrid.size(); ++i) {
    const double u = xgrid.point(i)[0] / zeta;
    psi[i] = norm * hermite(n, u) * std::exp(-0.5 * u * u);
  }
  return psi;
}

Complex ho_eigen_eta_value(int n, double mass, double omega, double hbar, const PhasePoint& z) {
  const double q = z.q[0];
  const double p = z.p[0];
  const Complex zc{q, -p / (mass * omega)};
  double log_pref = 0.5 * n * std::log(mass * omega / (2.0 * hbar));
  for (int k = 1; k <= n; ++k) log_pref -= 0.5 * std::log(static_cast<double>(k));
  const Complex expo{-(0.5 * mass * omega * omega * q * q + p * p / (2.0 * mass)) / (2.0 * hbar * omega),
                     omega * p * q / (2.0 * hbar * omega)};
  Complex zn{1.0, 0.0};
  for (int k = 0; k < n; ++k) zn *= zc;
  return std::exp(log_pref) * zn * std::exp(expo);
}

PhaseField ho_eigen_eta(int n, double mass, double omega, double hbar, const PhaseGrid& grid,
                        double eps) {
  require(grid.dim() == 1, ErrorCode::InvalidExtent, "ho_eigen_eta is one-dimensional");
  require(n >= 0 && n <= kHermiteMaxDegree, ErrorCode::DegreeTooHigh, "ho_eigen_eta needs 0 <= n <= 30");
  PhaseField eta(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    eta[i] = ho_eigen_eta_value(n, mass, omega, hbar, grid.point(i));
  }
  const double tail = boundary_mass(eta);
  require(tail <= eps, ErrorCode::GridTooSmall,
          "eta_" + std::to_string(n) + " boundary mass " + std::to_string(tail) + " exceeds " +
              std::to_string(eps));
  return eta;
}

}  // namespace phaseflow
