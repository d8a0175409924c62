#pragma once

#include <vector>

#include "phaseflow/field.hpp"

namespace phaseflow {

/// 4th-order central first derivative along one grid axis (q axes come first,
/// then p axes). Fields are zero-extended past the boundary.
std::vector<Complex> axis_derivative(const PhaseGrid& grid, const std::vector<Complex>& in, int axis);
std::vector<double> axis_derivative(const PhaseGrid& grid, const std::vector<double>& in, int axis);

/// 4th-order central second derivative along one axis.
std::vector<Complex> axis_second_derivative(const PhaseGrid& grid, const std::vector<Complex>& in,
                                            int axis);

}  // namespace phaseflow
