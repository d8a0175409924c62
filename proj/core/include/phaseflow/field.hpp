#pragma once

#include <complex>
#include <vector>

#include "phaseflow/grid.hpp"

namespace phaseflow {

using Complex = std::complex<double>;

/// Complex amplitude eta(q, p) sampled on a PhaseGrid.
class PhaseField {
 public:
  PhaseField() = default;
  explicit PhaseField(PhaseGrid grid, double time_tag = 0.0)
      : grid_(grid), values_(grid.size(), Complex{0.0, 0.0}), time_tag_(time_tag) {}

  const PhaseGrid& grid() const { return grid_; }
  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double time_tag() const { return time_tag_; }
  void set_time_tag(double t) { time_tag_ = t; }

 private:
  PhaseGrid grid_;
  std::vector<Complex> values_;
  double time_tag_ = 0.0;
};

/// Real scalar field on a PhaseGrid (action tables, residual magnitudes, ...).
class RealField {
 public:
  RealField() = default;
  explicit RealField(PhaseGrid grid, double time_tag = 0.0)
      : grid_(grid), values_(grid.size(), 0.0), time_tag_(time_tag) {}

  const PhaseGrid& grid() const { return grid_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  const double& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double time_tag() const { return time_tag_; }
  void set_time_tag(double t) { time_tag_ = t; }

 private:
  PhaseGrid grid_;
  std::vector<double> values_;
  double time_tag_ = 0.0;
};

/// Nonnegative density rho(q, p) = |eta|^2. Construction clamps interpolation
/// undershoot at the 1e-6-of-peak level and rejects anything more negative.
class DensityField {
 public:
  DensityField() = default;
  explicit DensityField(PhaseGrid grid, double time_tag = 0.0) : field_(grid, time_tag) {}
  static DensityField from_values(PhaseGrid grid, std::vector<double> values, double time_tag = 0.0);
  static DensityField from_amplitude(const PhaseField& eta);

  const PhaseGrid& grid() const { return field_.grid(); }
  std::vector<double>& values() { return field_.values(); }
  const std::vector<double>& values() const { return field_.values(); }
  double& operator[](std::size_t i) { return field_[i]; }
  const double& operator[](std::size_t i) const { return field_[i]; }
  std::size_t size() const { return field_.size(); }
  double time_tag() const { return field_.time_tag(); }
  void set_time_tag(double t) { field_.set_time_tag(t); }

  const RealField& as_real() const { return field_; }

 private:
  RealField field_;
};

/// Complex wavefunction psi(x) on a PositionGrid.
class PositionWavefunction {
 public:
  PositionWavefunction() = default;
  explicit PositionWavefunction(PositionGrid grid, double time_tag = 0.0)
      : grid_(grid), values_(grid.size(), Complex{0.0, 0.0}), time_tag_(time_tag) {}

  const PositionGrid& grid() const { return grid_; }
  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  double time_tag() const { return time_tag_; }
  void set_time_tag(double t) { time_tag_ = t; }

 private:
  PositionGrid grid_;
  std::vector<Complex> values_;
  double time_tag_ = 0.0;
};

inline constexpr double kDefaultBoundaryEps = 1e-8;

/// Trapezoid weight (product of per-axis 1/2 end factors) for a flat index.
double trapezoid_weight(const PhaseGrid& grid, std::size_t flat);
double trapezoid_weight(const PositionGrid& grid, std::size_t flat);

/// L2 norm^2 under plain trapezoid quadrature with measure prod dq dp (no 2*pi*hbar).
double l2_norm_sq(const PhaseField& f);
double l2_norm_sq(const PositionWavefunction& f);

/// Phase-space norm^2 and inner product with measure (dq dp / 2 pi hbar)^D.
double phase_norm_sq(const PhaseField& f, double hbar);
Complex phase_inner(const PhaseField& a, const PhaseField& b, double hbar);

Complex position_inner(const PositionWavefunction& a, const PositionWavefunction& b);

/// Fraction of the |.|^2 quadrature mass carried by the outermost grid ring.
double boundary_mass(const PhaseField& f);
double boundary_mass(const DensityField& f);  // fraction of the plain mass
double boundary_mass(const RealField& f);     // fraction of the absolute mass
double boundary_mass(const PositionWavefunction& f);

void require_interior(const PhaseField& f, double eps = kDefaultBoundaryEps);
void require_interior(const PositionWavefunction& f, double eps = kDefaultBoundaryEps);

bool all_finite(const PhaseField& f);

}  // namespace phaseflow
