#pragma once

#include <cstdint>
#include <vector>

#include "phaseflow/classical.hpp"

namespace phaseflow {

/// Precomputed one-step semi-Lagrangian stencil for an autonomous model on a
/// fixed grid: per node, the backtracked foot point of the characteristic,
/// the Simpson approximation of the segment action of p . dH/dp - H, and the
/// cached tensor-product interpolation stencil at the foot (the displacement
/// field does not change between steps, so the weights are built once).
class TransportPlan {
 public:
  TransportPlan(const PhaseGrid& grid, const HamiltonianModel& model, double dt,
                InterpOrder order = InterpOrder::Quintic);

  const PhaseGrid& grid() const { return grid_; }
  double dt() const { return dt_; }
  InterpOrder order() const { return order_; }
  const std::vector<PhasePoint>& foot() const { return foot_; }
  const std::vector<double>& segment_action() const { return seg_action_; }

  /// out[i] = interpolated f at foot[i] (zero-extended outside the grid).
  void advect(const RealField& f, RealField& out) const;
  void advect(const PhaseField& f, PhaseField& out) const;

  /// out[i] = interpolated S at foot[i] + segment_action[i].
  void advect_action(const RealField& S, RealField& out) const;

 private:
  template <class T>
  void advect_impl(const std::vector<T>& in, std::vector<T>& out) const;

  PhaseGrid grid_;
  double dt_ = 0.0;
  InterpOrder order_ = InterpOrder::Quintic;
  int stencil_ = 6;
  std::vector<PhasePoint> foot_;
  std::vector<double> seg_action_;
  // per node, per axis: first stencil flat-offset contribution and weights
  std::vector<std::int32_t> base_;              // node * axes + a -> base cell index
  std::vector<double> weights_;                 // node * axes * stencil
  std::array<std::size_t, 2 * kMaxDim> strides_{};
};

}  // namespace phaseflow
