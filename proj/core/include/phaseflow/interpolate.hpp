#pragma once

#include "phaseflow/field.hpp"

namespace phaseflow {

/// Tensor-product Lagrange interpolation order on uniform phase grids.
/// Cubic uses a 4-point stencil per axis, Quintic a 6-point stencil.
enum class InterpOrder { Cubic, Quintic };

/// Interpolate a field at an arbitrary phase point. Points outside the grid
/// (or with stencil support reaching outside) see the field zero-extended.
Complex interpolate(const PhaseField& f, const PhasePoint& z, InterpOrder order);
double interpolate(const RealField& f, const PhasePoint& z, InterpOrder order);
double interpolate(const DensityField& f, const PhasePoint& z, InterpOrder order);

}  // namespace phaseflow
