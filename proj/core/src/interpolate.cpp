#include "phaseflow/interpolate.hpp"

#include <cmath>

namespace phaseflow {

namespace {

// Lagrange weights for nodes at integer offsets around the base cell.
// Cubic: offsets {-1, 0, 1, 2}; quintic: {-2, ..., 3}; t in [0, 1).
template <int K>
void lagrange_weights(double t, std::array<double, K>& w) {
  constexpr int lo = K == 4 ? -1 : -2;
  for (int a = 0; a < K; ++a) {
    const int oa = lo + a;
    double prod = 1.0;
    for (int b = 0; b < K; ++b) {
      if (b == a) continue;
      const int ob = lo + b;
      prod *= (t - ob) / static_cast<double>(oa - ob);
    }
    w[a] = prod;
  }
}

template <int K, class T>
T interp_impl(const PhaseGrid& grid, const T* values, const PhasePoint& z) {
  constexpr int lo = K == 4 ? -1 : -2;
  const int na = grid.axes_count();
  const int dim = grid.dim();

  std::array<int, 2 * kMaxDim> base{};
  std::array<std::array<double, K>, 2 * kMaxDim> w{};
  for (int a = 0; a < na; ++a) {
    const AxisSpec& ax = grid.axis(a);
    const double coord = a < dim ? z.q[a] : z.p[a - dim];
    const double g = (coord - ax.min) / ax.spacing();
    const int cell = static_cast<int>(std::floor(g));
    base[a] = cell;
    lagrange_weights<K>(g - cell, w[a]);
  }

  // Tensor product with zero extension outside the grid.
  std::array<std::size_t, 2 * kMaxDim> strides{};
  std::size_t size = 1;
  for (int a = na - 1; a >= 0; --a) {
    strides[a] = size;
    size *= static_cast<std::size_t>(grid.axis(a).count);
  }

  T acc{};
  std::array<int, 2 * kMaxDim> off{};
  while (true) {
    double weight = 1.0;
    std::size_t flat = 0;
    bool inside = true;
    for (int a = 0; a < na; ++a) {
      const int idx = base[a] + lo + off[a];
      if (idx < 0 || idx >= grid.axis(a).count) { inside = false; break; }
      weight *= w[a][off[a]];
      flat += static_cast<std::size_t>(idx) * strides[a];
    }
    if (inside) acc += weight * values[flat];
    int a = na - 1;
    for (; a >= 0; --a) {
      if (++off[a] < K) break;
      off[a] = 0;
    }
    if (a < 0) break;
  }
  return acc;
}

}  // namespace

Complex interpolate(const PhaseField& f, const PhasePoint& z, InterpOrder order) {
  if (order == InterpOrder::Cubic) return interp_impl<4>(f.grid(), f.values().data(), z);
  return interp_impl<6>(f.grid(), f.values().data(), z);
}

double interpolate(const RealField& f, const PhasePoint& z, InterpOrder order) {
  if (order == InterpOrder::Cubic) return interp_impl<4>(f.grid(), f.values().data(), z);
  return interp_impl<6>(f.grid(), f.values().data(), z);
}

double interpolate(const DensityField& f, const PhasePoint& z, InterpOrder order) {
  return interpolate(f.as_real(), z, order);
}

}  // namespace phaseflow
