#pragma once

#include <cmath>
#include <stdexcept>

#include "fluxcf/errors.hpp"

namespace fluxcf {

/// Exponent magnitude past which exp(z) is replaced by its asymptotic form.
inline constexpr double kOverflowThreshold = 700.0;

/// Below this |z|, W(z) is evaluated by its Taylor series about 0.
inline constexpr double kWSeriesThreshold = 1e-3;

/// W~(z, q) with q != 0 is rejected for |z| below this bound.
inline constexpr double kWTildeGuard = 10.0;

/** @brief The Bernoulli function B(z) = z / (exp(z) - 1). Avoids round-off and overflow.
 *
 * B(0) = 1 (removable singularity). For z beyond +-700 the asymptotic values
 * z*exp(-z) and -z are used, so no overflow occurs for any finite argument.
 */
inline double bernoulli(double z) {
  if (!std::isfinite(z)) throw std::domain_error("bernoulli: non-finite argument");
  if (z == 0.0) return 1.0;
  if (z > kOverflowThreshold) {
    // positive and monotone to zero even where z*exp(-z) underflows
    const double v = z * std::exp(-z);
    return v > 0.0 ? v : std::numeric_limits<double>::denorm_min();
  }
  if (z < -kOverflowThreshold) return -z;
  return z / std::expm1(z);
}

/** @brief exp(shift) * B(z) with the exponentials fused.
 *
 * The homogeneous flux coefficients pair B with a factor exp(-alpha*q) whose
 * exponent can exceed the overflow point even though the product is tiny;
 * for z > 0 the product is computed as z*exp(shift - z)/(1 - exp(-z)).
 */
inline double scaled_bernoulli(double z, double shift) {
  if (!std::isfinite(z) || !std::isfinite(shift))
    throw std::domain_error("scaled_bernoulli: non-finite argument");
  if (z == 0.0) return std::exp(shift);
  if (z > 0.0) return z * std::exp(shift - z) / (-std::expm1(-z));
  return std::exp(shift) * bernoulli(z);
}

/** @brief W(z) = (exp(z/2) - 1 - z/2) / (z (exp(z) - 1)), the source weight of the
 * complete flux scheme. W(0) = 1/8.
 *
 * Near zero the numerator cancels two leading orders, so a Taylor series is
 * used for |z| < 1e-3; for z > 700 the expression is rescaled by exp(-z).
 */
inline double w_weight(double z) {
  if (!std::isfinite(z)) throw std::domain_error("w_weight: non-finite argument");
  const double az = std::fabs(z);
  if (az < kWSeriesThreshold) {
    // 1/8 - z/24 + z^2/384 + z^3/1440 - z^4/15360 - z^5/60480 + O(z^6)
    return 0.125 +
           z * (-1.0 / 24.0 +
                z * (1.0 / 384.0 +
                     z * (1.0 / 1440.0 + z * (-1.0 / 15360.0 + z * (-1.0 / 60480.0)))));
  }
  if (z > kOverflowThreshold) {
    // multiply numerator and denominator by exp(-z)
    return (std::exp(-0.5 * z) - (1.0 + 0.5 * z) * std::exp(-z)) / (z * (-std::expm1(-z)));
  }
  return (std::expm1(0.5 * z) - 0.5 * z) / (z * std::expm1(z));
}

/** @brief W~(z, q) = (exp(z/2 + q) - 1 - z/2) / (z (exp(z) - 1)).
 *
 * Equals w_weight(z) at q = 0. The function is ill-defined near z = 0 when
 * q != 0, and the scheme never evaluates it there: callers with q != 0 and
 * |z| < 10 get a scheme_error.
 */
inline double w_tilde(double z, double q) {
  if (!std::isfinite(z) || !std::isfinite(q))
    throw std::domain_error("w_tilde: non-finite argument");
  if (q == 0.0) return w_weight(z);
  if (std::fabs(z) < kWTildeGuard)
    throw scheme_error("w_tilde: |z| < 10 with q != 0 violates the small-Peclet policy");
  if (z > 0.0) {
    // scaled by exp(-z): keeps the denominator finite for large z
    return (std::exp(q - 0.5 * z) - (1.0 + 0.5 * z) * std::exp(-z)) / (z * (-std::expm1(-z)));
  }
  return (std::exp(0.5 * z + q) - 1.0 - 0.5 * z) / (z * std::expm1(z));
}

}  // namespace fluxcf
