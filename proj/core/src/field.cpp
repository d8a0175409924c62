#include "phaseflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phaseflow {

DensityField DensityField::from_values(PhaseGrid grid, std::vector<double> values, double time_tag) {
  require(values.size() == grid.size(), ErrorCode::GridMismatch, "density values do not match grid size");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, v);
  const double undershoot = -1e-6 * std::max(peak, 1e-300);
  for (double& v : values) {
    if (v < 0.0) {
      require(v >= undershoot, ErrorCode::InvalidExtent, "density has negative values");
      v = 0.0;
    }
  }
  DensityField d(grid, time_tag);
  d.values() = std::move(values);
  return d;
}

DensityField DensityField::from_amplitude(const PhaseField& eta) {
  DensityField d(eta.grid(), eta.time_tag());
  const auto& v = eta.values();
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = std::norm(v[i]);
  return d;
}

double trapezoid_weight(const PhaseGrid& grid, std::size_t flat) {
  const auto idx = grid.unravel(flat);
  double w = 1.0;
  for (int a = 0; a < grid.axes_count(); ++a) {
    if (idx[a] == 0 || idx[a] == grid.axis(a).count - 1) w *= 0.5;
  }
  return w;
}

double trapezoid_weight(const PositionGrid& grid, std::size_t flat) {
  const auto idx = grid.unravel(flat);
  double w = 1.0;
  for (int i = 0; i < grid.dim(); ++i) {
    if (idx[i] == 0 || idx[i] == grid.axis(i).count - 1) w *= 0.5;
  }
  return w;
}

double l2_norm_sq(const PhaseField& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += trapezoid_weight(f.grid(), i) * std::norm(f[i]);
  return s * f.grid().cell_measure();
}

double l2_norm_sq(const PositionWavefunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += trapezoid_weight(f.grid(), i) * std::norm(f[i]);
  return s * f.grid().cell_measure();
}

double phase_norm_sq(const PhaseField& f, double hbar) {
  const double two_pi_hbar = 2.0 * std::numbers::pi * hbar;
  return l2_norm_sq(f) / std::pow(two_pi_hbar, f.grid().dim());
}

Complex phase_inner(const PhaseField& a, const PhaseField& b, double hbar) {
  require(a.grid().same_layout(b.grid()), ErrorCode::GridMismatch, "phase_inner requires a shared grid");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += trapezoid_weight(a.grid(), i) * std::conj(a[i]) * b[i];
  }
  const double two_pi_hbar = 2.0 * std::numbers::pi * hbar;
  return s * a.grid().cell_measure() / std::pow(two_pi_hbar, a.grid().dim());
}

Complex position_inner(const PositionWavefunction& a, const PositionWavefunction& b) {
  require(a.grid().same_layout(b.grid()), ErrorCode::GridMismatch, "position_inner requires a shared grid");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += trapezoid_weight(a.grid(), i) * std::conj(a[i]) * b[i];
  }
  return s * a.grid().cell_measure();
}

namespace {

template <class Grid, class Getter>
double ring_fraction(const Grid& grid, std::size_t n, Getter value_sq) {
  double ring = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = value_sq(i);
    total += v;
    bool on_ring = false;
    const auto idx = grid.unravel(i);
    const int na = [&] {
      if constexpr (requires { grid.axes_count(); }) return grid.axes_count();
      else return grid.dim();
    }();
    for (int a = 0; a < na; ++a) {
      if (idx[a] == 0 || idx[a] == grid.axis(a).count - 1) { on_ring = true; break; }
    }
    if (on_ring) ring += v;
  }
  if (total <= 0.0) return 0.0;
  return ring / total;
}

}  // namespace

double boundary_mass(const PhaseField& f) {
  return ring_fraction(f.grid(), f.size(), [&](std::size_t i) { return std::norm(f[i]); });
}

double boundary_mass(const DensityField& f) {
  return ring_fraction(f.grid(), f.size(), [&](std::size_t i) { return f[i]; });
}

double boundary_mass(const RealField& f) {
  return ring_fraction(f.grid(), f.size(), [&](std::size_t i) { return std::abs(f[i]); });
}

double boundary_mass(const PositionWavefunction& f) {
  return ring_fraction(f.grid(), f.size(), [&](std::size_t i) { return std::norm(f[i]); });
}

void require_interior(const PhaseField& f, double eps) {
  const double m = boundary_mass(f);
  require(m <= eps, ErrorCode::GridTooSmall,
          "phase field boundary mass " + std::to_string(m) + " exceeds " + std::to_string(eps));
}

void require_interior(const PositionWavefunction& f, double eps) {
  const double m = boundary_mass(f);
  require(m <= eps, ErrorCode::GridTooSmall,
          "wavefunction boundary mass " + std::to_string(m) + " exceeds " + std::to_string(eps));
}

bool all_finite(const PhaseField& f) {
  for (const auto& v : f.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace phaseflow
