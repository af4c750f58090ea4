#pragma once

#include <array>

#include "fjsched/types.hpp"

namespace fjsched {

/// Position-based learning rate. Zero means no learning (scaling only).
class LearningRate {
 public:
  constexpr LearningRate() = default;
  /// Throws std::domain_error for negative or non-finite values.
  explicit LearningRate(double alpha);

  constexpr double value() const { return alpha_; }

  friend bool operator==(LearningRate, LearningRate) = default;

 private:
  double alpha_ = 0.0;
};

/// Learning rates used in the experiments.
inline constexpr std::array<double, 5> kAlphaPresets{0.0, 0.1, 0.2, 0.3, 0.5};

/// Actual processing time, in scaled units, of an operation with standard
/// time `p` placed at 1-based position `r` of its machine:
///
///     floor(100 * p * r^-alpha + 1/2)
///
/// Evaluated in double precision; results that land within 1e-6 of a rounding
/// boundary are recomputed with 50-digit arithmetic so the integer is exact.
/// Throws std::domain_error when p < 1 or r < 1.
Time psi(LearningRate alpha, Time p, int r);

}  // namespace fjsched
