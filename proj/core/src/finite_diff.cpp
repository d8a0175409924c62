#include "phaseflow/finite_diff.hpp"

#include "phaseflow/parallel.hpp"

namespace phaseflow {

namespace {

template <class T, class Stencil>
std::vector<T> axis_apply(const PhaseGrid& grid, const std::vector<T>& in, int axis, Stencil stencil) {
  const int na = grid.axes_count();
  std::array<std::size_t, 2 * kMaxDim> strides{};
  std::size_t size = 1;
  for (int a = na - 1; a >= 0; --a) {
    strides[a] = size;
    size *= static_cast<std::size_t>(grid.axis(a).count);
  }
  const std::size_t stride = strides[axis];
  const int count = grid.axis(axis).count;
  const double h = grid.axis(axis).spacing();
  std::vector<T> out(size, T{});
  parallel_for(size, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const int idx = static_cast<int>((f / stride) % static_cast<std::size_t>(count));
      auto at = [&](int off) -> T {
        const int j = idx + off;
        if (j < 0 || j >= count) return T{};
        return in[f + static_cast<std::ptrdiff_t>(off) * static_cast<std::ptrdiff_t>(stride)];
      };
      out[f] = stencil(at, h);
    }
  });
  return out;
}

template <class At>
auto d1(At at, double h) {
  return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

template <class At>
auto d2(At at, double h) {
  return (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h * h);
}

}  // namespace

std::vector<Complex> axis_derivative(const PhaseGrid& grid, const std::vector<Complex>& in, int axis) {
  return axis_apply(grid, in, axis, [](auto at, double h) { return d1(at, h); });
}

std::vector<double> axis_derivative(const PhaseGrid& grid, const std::vector<double>& in, int axis) {
  return axis_apply(grid, in, axis, [](auto at, double h) { return d1(at, h); });
}

std::vector<Complex> axis_second_derivative(const PhaseGrid& grid, const std::vector<Complex>& in,
                                            int axis) {
  return axis_apply(grid, in, axis, [](auto at, double h) { return d2(at, h); });
}

}  // namespace phaseflow
