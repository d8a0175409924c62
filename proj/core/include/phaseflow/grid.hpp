#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "phaseflow/errors.hpp"

namespace phaseflow {

inline constexpr int kMaxDim = 2;

/// Coordinate vector sized for up to kMaxDim spatial dimensions. Components
/// beyond the active dimensionality are kept at zero.
using Vec = std::array<double, kMaxDim>;

inline Vec vec1(double a) { return Vec{a, 0.0}; }
inline Vec vec2(double a, double b) { return Vec{a, b}; }

/// A point (q, p) of phase space.
struct PhasePoint {
  Vec q{};
  Vec p{};
};

inline PhasePoint phase_point(double q, double p) { return PhasePoint{vec1(q), vec1(p)}; }

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double spacing() const { return (max - min) / (count - 1); }
  double coord(int i) const { return min + i * spacing(); }
};

namespace detail {
void validate_axis(const AxisSpec& axis, const char* what);
}

/// Uniform tensor grid over the 2D-dimensional phase space: all q axes first,
/// then all p axes, row-major flat indexing. Immutable after construction.
class PhaseGrid {
 public:
  static PhaseGrid make(int dim, std::span<const AxisSpec> q_axes, std::span<const AxisSpec> p_axes);
  static PhaseGrid make1d(double q_min, double q_max, int n_q, double p_min, double p_max, int n_p);

  int dim() const { return dim_; }
  int axes_count() const { return 2 * dim_; }
  const AxisSpec& q_axis(int i = 0) const { return axes_[i]; }
  const AxisSpec& p_axis(int i = 0) const { return axes_[dim_ + i]; }
  const AxisSpec& axis(int a) const { return axes_[a]; }

  double dq(int i = 0) const { return q_axis(i).spacing(); }
  double dp(int i = 0) const { return p_axis(i).spacing(); }

  std::size_t size() const { return size_; }

  /// Phase-space cell measure prod_i dq_i dp_i.
  double cell_measure() const;

  /// Decompose a flat index into per-axis indices (q axes then p axes).
  std::array<int, 2 * kMaxDim> unravel(std::size_t flat) const;
  std::size_t ravel(std::span<const int> idx) const;

  PhasePoint point(std::size_t flat) const;
  PhasePoint point(std::span<const int> idx) const;

  bool contains(const PhasePoint& z) const;

  /// True when every per-axis index is at least `margin` away from both ends.
  bool interior(std::size_t flat, int margin) const;

  bool same_layout(const PhaseGrid& other) const;

 private:
  int dim_ = 1;
  std::array<AxisSpec, 2 * kMaxDim> axes_{};
  std::array<std::size_t, 2 * kMaxDim> strides_{};
  std::size_t size_ = 0;
};

/// Uniform grid over D-dimensional position space.
class PositionGrid {
 public:
  static PositionGrid make(int dim, std::span<const AxisSpec> axes);
  static PositionGrid make1d(double x_min, double x_max, int n_x);

  int dim() const { return dim_; }
  const AxisSpec& axis(int i = 0) const { return axes_[i]; }
  double dx(int i = 0) const { return axes_[i].spacing(); }
  std::size_t size() const { return size_; }
  double cell_measure() const;

  std::array<int, kMaxDim> unravel(std::size_t flat) const;
  Vec point(std::size_t flat) const;
  bool same_layout(const PositionGrid& other) const;

 private:
  int dim_ = 1;
  std::array<AxisSpec, kMaxDim> axes_{};
  std::array<std::size_t, kMaxDim> strides_{};
  std::size_t size_ = 0;
};

}  // namespace phaseflow
