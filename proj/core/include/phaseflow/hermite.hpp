#pragma once

#include "phaseflow/errors.hpp"

namespace phaseflow {

inline constexpr int kHermiteMaxDegree = 30;

/// Physicists' Hermite polynomial H_n (leading coefficient 2^n) by the
/// three-term recurrence H_{n+1} = 2 x H_n - 2 n H_{n-1}. Works for real and
/// complex arguments.
template <class T>
T hermite(int n, T x) {
  require(n >= 0 && n <= kHermiteMaxDegree, ErrorCode::DegreeTooHigh,
          "hermite degree " + std::to_string(n) + " outside [0, 30]");
  T h0 = T(1);
  if (n == 0) return h0;
  T h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    T h2 = 2.0 * x * h1 - 2.0 * static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace phaseflow
