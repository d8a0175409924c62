#include "phaseflow/reference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fftw3.h>
#include <mutex>
#include <numbers>

namespace phaseflow {

namespace {

// Periodic spectral discretization: the box is extended to period L = n dx,
// which is harmless at these boundary-mass levels.
Eigen::MatrixXd spectral_hamiltonian(const HamiltonianModel& model, const AxisSpec& ax, int n,
                                     double hbar) {
  const double dx = (ax.max - ax.min) / (ax.count - 1) * (ax.count - 1) / (n - 1);
  const double L = n * dx;
  // Circulant kinetic matrix T_{jl} = (1/n) sum_k (hbar k)^2/2m cos(k (j-l) dx)
  std::vector<double> kinetic_row(n, 0.0);
  for (int m = 0; m < n; ++m) {
    const int k_index = m <= n / 2 ? m : m - n;
    const double k = 2.0 * std::numbers::pi * k_index / L;
    const double ek = hbar * hbar * k * k / (2.0 * model.mass());
    for (int d = 0; d < n; ++d) {
      kinetic_row[d] += ek * std::cos(2.0 * std::numbers::pi * k_index * d / n) / n;
    }
  }
  Eigen::MatrixXd H(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      int d = std::abs(j - l);
      H(j, l) = kinetic_row[d];
    }
    const double x = ax.min + j * dx;
    H(j, j) += model.potential(Vec{x, 0.0});
  }
  return 0.5 * (H + H.transpose());
}

std::vector<double> eigenvalues_at(const HamiltonianModel& model, const AxisSpec& ax, int n,
                                   double hbar, int k) {
  const Eigen::MatrixXd H = spectral_hamiltonian(model, ax, n, hbar);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
  std::vector<double> e(k);
  for (int i = 0; i < k; ++i) e[i] = solver.eigenvalues()(i);
  return e;
}

std::mutex fftw_mutex;

}  // namespace

std::vector<EigenPair> eigensolve(const HamiltonianModel& model, const PositionGrid& xgrid, int k,
                                  double hbar) {
  require(xgrid.dim() == 1, ErrorCode::InvalidExtent, "eigensolve handles 1D grids");
  require(model.has_potential_form() && model.dim() == 1, ErrorCode::InvalidExtent,
          "eigensolve needs a 1D kinetic-plus-potential model");
  const int n = xgrid.axis().count;
  require(k >= 1 && k < n / 4, ErrorCode::InvalidExtent, "requested level count too large for grid");

  const Eigen::MatrixXd H = spectral_hamiltonian(model, xgrid.axis(), n, hbar);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  require(solver.info() == Eigen::Success, ErrorCode::GridTooCoarse, "eigensolver failed");

  // Discretization error estimate from a half-resolution solve.
  {
    const auto coarse = eigenvalues_at(model, xgrid.axis(), n / 2, hbar, k);
    double min_gap = 1e300;
    for (int i = 0; i + 1 < k; ++i) {
      min_gap = std::min(min_gap, solver.eigenvalues()(i + 1) - solver.eigenvalues()(i));
    }
    if (k == 1) min_gap = std::max(1.0, std::abs(solver.eigenvalues()(0)));
    for (int i = 0; i < k; ++i) {
      const double est = std::abs(coarse[i] - solver.eigenvalues()(i));
      require(est <= 1e-6 * min_gap, ErrorCode::GridTooCoarse,
              "level " + std::to_string(i) + " discretization error estimate " +
                  std::to_string(est) + " exceeds 1e-6 of the level spacing");
    }
  }

  const double dx = xgrid.dx();
  std::vector<EigenPair> out(k);
  for (int i = 0; i < k; ++i) {
    out[i].energy = solver.eigenvalues()(i);
    out[i].state = PositionWavefunction(xgrid);
    // normalize under grid quadrature; sign convention: positive at the
    // rightmost antinode (Hermite functions are positive as x -> +inf)
    double norm = 0.0;
    double peak = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = solver.eigenvectors()(j, i);
      norm += v * v;
      peak = std::max(peak, std::abs(v));
    }
    norm = std::sqrt(norm * dx);
    double sign = 1.0;
    for (int j = n - 1; j >= 0; --j) {
      const double v = solver.eigenvectors()(j, i);
      if (std::abs(v) >= 0.1 * peak) {
        sign = v >= 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int j = 0; j < n; ++j) {
      out[i].state[j] = sign * solver.eigenvectors()(j, i) / norm;
    }
  }
  return out;
}

PositionWavefunction schrodinger_evolve(const PositionWavefunction& psi,
                                        const HamiltonianModel& model, double t, double dt,
                                        double hbar, double eps) {
  require(psi.grid().dim() == 1, ErrorCode::InvalidExtent, "schrodinger_evolve handles 1D grids");
  require(model.has_potential_form() && model.dim() == 1, ErrorCode::InvalidExtent,
          "schrodinger_evolve needs a 1D kinetic-plus-potential model");
  require(t >= 0.0 && dt > 0.0, ErrorCode::InvalidExtent, "need t >= 0 and dt > 0");
  require_interior(psi, eps);
  if (t == 0.0) return psi;

  const int n = psi.grid().axis().count;
  const double dx = psi.grid().dx();
  const double L = n * dx;
  const int n_steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
  const double step = t / n_steps;

  std::vector<Complex> half_v(n), kin(n);
  for (int j = 0; j < n; ++j) {
    const double x = psi.grid().axis().coord(j);
    half_v[j] = std::polar(1.0, -model.potential(Vec{x, 0.0}) * step / (2.0 * hbar));
  }
  for (int m = 0; m < n; ++m) {
    const int k_index = m <= n / 2 ? m : m - n;
    const double k = 2.0 * std::numbers::pi * k_index / L;
    kin[m] = std::polar(1.0, -hbar * k * k * step / (2.0 * model.mass()));
  }

  std::vector<Complex> buf(psi.values());
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_plan fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                     reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                     reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
                                     FFTW_ESTIMATE);
    for (int s = 0; s < n_steps; ++s) {
      for (int j = 0; j < n; ++j) buf[j] *= half_v[j];
      fftw_execute(fwd);
      for (int m = 0; m < n; ++m) buf[m] *= kin[m] / static_cast<double>(n);
      fftw_execute(bwd);
      for (int j = 0; j < n; ++j) buf[j] *= half_v[j];
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }

  PositionWavefunction out(psi.grid(), psi.time_tag() + t);
  out.values() = std::move(buf);
  const double bm = boundary_mass(out);
  require(bm <= eps, ErrorCode::OutflowDetected,
          "evolved wavefunction boundary mass " + std::to_string(bm) + " exceeds " +
              std::to_string(eps));
  return out;
}

}  // namespace phaseflow
