#include "phaseflow/grid.hpp"

#include <cmath>

namespace phaseflow {

namespace detail {

void validate_axis(const AxisSpec& axis, const char* what) {
  if (!(axis.max > axis.min)) {
    fail(ErrorCode::InvalidExtent,
         std::string(what) + " extent [" + std::to_string(axis.min) + ", " +
             std::to_string(axis.max) + "] requires max > min");
  }
  if (axis.count < 8) {
    fail(ErrorCode::TooCoarse,
         std::string(what) + " axis has " + std::to_string(axis.count) + " points, need >= 8");
  }
}

}  // namespace detail

PhaseGrid PhaseGrid::make(int dim, std::span<const AxisSpec> q_axes, std::span<const AxisSpec> p_axes) {
  require(dim == 1 || dim == 2, ErrorCode::InvalidExtent, "phase grid dimension must be 1 or 2");
  require(static_cast<int>(q_axes.size()) == dim && static_cast<int>(p_axes.size()) == dim,
          ErrorCode::InvalidExtent, "need one q axis and one p axis per dimension");
  PhaseGrid g;
  g.dim_ = dim;
  for (int i = 0; i < dim; ++i) {
    detail::validate_axis(q_axes[i], "q");
    detail::validate_axis(p_axes[i], "p");
    g.axes_[i] = q_axes[i];
    g.axes_[dim + i] = p_axes[i];
  }
  const int na = 2 * dim;
  g.size_ = 1;
  for (int a = na - 1; a >= 0; --a) {
    g.strides_[a] = g.size_;
    g.size_ *= static_cast<std::size_t>(g.axes_[a].count);
  }
  return g;
}

PhaseGrid PhaseGrid::make1d(double q_min, double q_max, int n_q, double p_min, double p_max, int n_p) {
  const AxisSpec q{q_min, q_max, n_q};
  const AxisSpec p{p_min, p_max, n_p};
  return make(1, std::span(&q, 1), std::span(&p, 1));
}

double PhaseGrid::cell_measure() const {
  double m = 1.0;
  for (int a = 0; a < axes_count(); ++a) m *= axes_[a].spacing();
  return m;
}

std::array<int, 2 * kMaxDim> PhaseGrid::unravel(std::size_t flat) const {
  std::array<int, 2 * kMaxDim> idx{};
  for (int a = 0; a < axes_count(); ++a) {
    idx[a] = static_cast<int>(flat / strides_[a]);
    flat %= strides_[a];
  }
  return idx;
}

std::size_t PhaseGrid::ravel(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < axes_count(); ++a) flat += static_cast<std::size_t>(idx[a]) * strides_[a];
  return flat;
}

PhasePoint PhaseGrid::point(std::size_t flat) const {
  const auto idx = unravel(flat);
  PhasePoint z;
  for (int i = 0; i < dim_; ++i) {
    z.q[i] = axes_[i].coord(idx[i]);
    z.p[i] = axes_[dim_ + i].coord(idx[dim_ + i]);
  }
  return z;
}

PhasePoint PhaseGrid::point(std::span<const int> idx) const {
  PhasePoint z;
  for (int i = 0; i < dim_; ++i) {
    z.q[i] = axes_[i].coord(idx[i]);
    z.p[i] = axes_[dim_ + i].coord(idx[dim_ + i]);
  }
  return z;
}

bool PhaseGrid::contains(const PhasePoint& z) const {
  for (int i = 0; i < dim_; ++i) {
    if (z.q[i] < axes_[i].min || z.q[i] > axes_[i].max) return false;
    if (z.p[i] < axes_[dim_ + i].min || z.p[i] > axes_[dim_ + i].max) return false;
  }
  return true;
}

bool PhaseGrid::interior(std::size_t flat, int margin) const {
  const auto idx = unravel(flat);
  for (int a = 0; a < axes_count(); ++a) {
    if (idx[a] < margin || idx[a] >= axes_[a].count - margin) return false;
  }
  return true;
}

bool PhaseGrid::same_layout(const PhaseGrid& other) const {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < axes_count(); ++a) {
    if (axes_[a].count != other.axes_[a].count) return false;
    if (axes_[a].min != other.axes_[a].min || axes_[a].max != other.axes_[a].max) return false;
  }
  return true;
}

PositionGrid PositionGrid::make(int dim, std::span<const AxisSpec> axes) {
  require(dim == 1 || dim == 2, ErrorCode::InvalidExtent, "position grid dimension must be 1 or 2");
  require(static_cast<int>(axes.size()) == dim, ErrorCode::InvalidExtent, "need one axis per dimension");
  PositionGrid g;
  g.dim_ = dim;
  for (int i = 0; i < dim; ++i) {
    detail::validate_axis(axes[i], "x");
    g.axes_[i] = axes[i];
  }
  g.size_ = 1;
  for (int a = dim - 1; a >= 0; --a) {
    g.strides_[a] = g.size_;
    g.size_ *= static_cast<std::size_t>(g.axes_[a].count);
  }
  return g;
}

PositionGrid PositionGrid::make1d(double x_min, double x_max, int n_x) {
  const AxisSpec x{x_min, x_max, n_x};
  return make(1, std::span(&x, 1));
}

double PositionGrid::cell_measure() const {
  double m = 1.0;
  for (int i = 0; i < dim_; ++i) m *= axes_[i].spacing();
  return m;
}

std::array<int, kMaxDim> PositionGrid::unravel(std::size_t flat) const {
  std::array<int, kMaxDim> idx{};
  for (int i = 0; i < dim_; ++i) {
    idx[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return idx;
}

Vec PositionGrid::point(std::size_t flat) const {
  const auto idx = unravel(flat);
  Vec x{};
  for (int i = 0; i < dim_; ++i) x[i] = axes_[i].coord(idx[i]);
  return x;
}

bool PositionGrid::same_layout(const PositionGrid& other) const {
  if (dim_ != other.dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (axes_[i].count != other.axes_[i].count) return false;
    if (axes_[i].min != other.axes_[i].min || axes_[i].max != other.axes_[i].max) return false;
  }
  return true;
}

}  // namespace phaseflow
