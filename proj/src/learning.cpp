#include "fjsched/learning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fjsched {

LearningRate::LearningRate(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::domain_error("learning rate must be finite and >= 0, got " + std::to_string(alpha));
}

namespace {

constexpr double kBoundaryGuard = 1e-6;

Time psi_extended(double alpha, Time p, int r) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  // alpha is a binary double, so Big(alpha) is exact.
  const Big scaled = Big(100) * Big(p) * boost::multiprecision::exp(-Big(alpha) * boost::multiprecision::log(Big(r)));
  const Big shifted = scaled + Big(0.5);
  const Big nearest = boost::multiprecision::round(shifted);
  // Exact ties (100*p*r^-alpha = n + 1/2, e.g. alpha = 1, r = 8, p odd) can
  // only be resolved as ties; the residual of a 50-digit evaluation is far
  // below this threshold.
  if (boost::multiprecision::abs(shifted - nearest) < Big("1e-40"))
    return nearest.convert_to<Time>();
  return boost::multiprecision::floor(shifted).convert_to<Time>();
}

}  // namespace

Time psi(LearningRate alpha, Time p, int r) {
  if (p < 1) throw std::domain_error("standard processing time must be >= 1");
  if (r < 1) throw std::domain_error("machine position must be >= 1");
  if (r == 1 || alpha.value() == 0.0) return 100 * p;

  const double shifted =
      100.0 * static_cast<double>(p) * std::exp(-alpha.value() * std::log(static_cast<double>(r))) + 0.5;
  const double fraction = shifted - std::floor(shifted);
  const Time value = (fraction < kBoundaryGuard || fraction > 1.0 - kBoundaryGuard)
                         ? psi_extended(alpha.value(), p, r)
                         : static_cast<Time>(std::floor(shifted));
  // Processing never drops below one scaled unit.
  return std::max<Time>(1, value);
}

}  // namespace fjsched
