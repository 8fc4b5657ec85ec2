#pragma once

#include <cmath>

#include "fluxcf/errors.hpp"
#include "fluxcf/specfun.hpp"

namespace fluxcf {

/// Stencil family selector. AutoUpwind resolves the family per interface
/// from the sign of the Peclet number; DownwindAdjusted applies the slope
/// correction from the wrong (downwind) end of the interval.
enum class FluxVariant { PiecewiseConstant, UpwindAdjusted, DownwindAdjusted, AutoUpwind };

/** @brief Interface Peclet data: Pe, correction term Q, slope limiter alpha,
 * and the upwind-adjusted Peclet numbers Pe+ = Pe - alpha*Q, Pe- = Pe + alpha*Q.
 */
struct PecletData {
  double pe;
  double q;
  double alpha;
  double pe_plus;
  double pe_minus;
};

/** @brief Build PecletData for one interface.
 *
 * pe = (mu/D) v dx, q = (mu/D) dvdx dx^2 / 2. With the limiter on,
 * alpha = min(1, |pe/q|), which keeps the adjusted Peclet numbers from
 * changing sign relative to pe.
 */
inline PecletData peclet_data(double v, double dvdx, double dx, double mu, double diffusion,
                              bool limiter_on = true) {
  if (!(diffusion > 0.0)) throw config_error("peclet_data: diffusion must be positive");
  if (!(dx > 0.0)) throw config_error("peclet_data: dx must be positive");
  const double pe = (mu / diffusion) * v * dx;
  const double q = (mu / diffusion) * dvdx * dx * dx / 2.0;
  double alpha = 1.0;
  if (limiter_on && q != 0.0) alpha = std::min(1.0, std::fabs(pe / q));
  const double aq = alpha * q;
  return PecletData{pe, q, alpha, pe - aq, pe + aq};
}

/** @brief The flux at one interface as a linear form:
 * f = a_left*c_j + a_right*c_{j+1} + b_left*s_j + b_right*s_{j+1}.
 */
struct FluxStencil {
  double a_left;
  double a_right;
  double b_left;
  double b_right;

  double apply(double c_l, double c_r, double s_l, double s_r) const {
    return a_left * c_l + a_right * c_r + b_left * s_l + b_right * s_r;
  }
};

/// Homogeneous + inhomogeneous flux for a piecewise-constant velocity
/// (the Scharfetter-Gummel flux plus the W source weights).
inline FluxStencil stencil_pwc(const PecletData& p, double diffusion, double dx) {
  const double r = diffusion / dx;
  return FluxStencil{r * bernoulli(-p.pe), -r * bernoulli(p.pe), dx * w_weight(-p.pe),
                     -dx * w_weight(p.pe)};
}

namespace detail {

/// Source weights of the adjusted families. When the adjusted Peclet number is
/// inside the W~ guard band the q-offsets are dropped (W~(z,0) = W(z)), which
/// keeps the weights defined at small Peclet numbers without touching the
/// homogeneous adjustment.
inline double if_weight(double z, double q_offset) {
  if (std::fabs(z) < kWTildeGuard) return w_weight(z);
  return w_tilde(z, q_offset);
}

}  // namespace detail

/** @brief Upwind-adjusted stencil centred at the left end of the interval;
 * the natural choice for pe > 0.
 *
 * Homogeneous coefficients use Pe+ with the exp(-alpha q) downwind factor
 * fused into the Bernoulli evaluation; source weights use W~ with the
 * (-3/4, +1/4) alpha*q offsets.
 */
inline FluxStencil stencil_upwind_plus(const PecletData& p, double diffusion, double dx) {
  const double aq = p.alpha * p.q;
  if (aq == 0.0) return stencil_pwc(p, diffusion, dx);
  const double r = diffusion / dx;
  const double pep = p.pe_plus;
  return FluxStencil{r * bernoulli(-pep), -r * scaled_bernoulli(pep, -aq),
                     dx * detail::if_weight(-pep, 0.25 * aq),
                     -dx * detail::if_weight(pep, -0.75 * aq)};
}

/// Mirror of stencil_upwind_plus centred at the right end (natural for pe < 0),
/// with the (-1/4, -5/4) alpha*q offsets.
inline FluxStencil stencil_upwind_minus(const PecletData& p, double diffusion, double dx) {
  const double aq = p.alpha * p.q;
  if (aq == 0.0) return stencil_pwc(p, diffusion, dx);
  const double r = diffusion / dx;
  const double pem = p.pe_minus;
  return FluxStencil{r * scaled_bernoulli(-pem, -aq), -r * bernoulli(pem),
                     dx * detail::if_weight(-pem, -1.25 * aq),
                     -dx * detail::if_weight(pem, -0.25 * aq)};
}

enum class IbpSide { Plus, Minus };

/// Denominator guard for the non-asymptotic integration-by-parts stencils.
inline constexpr double kIbpDenominatorGuard = 1e-12;

/** @brief The non-asymptotic integration-by-parts stencils.
 *
 * Verification counterpart of the asymptotic forms; both reduce to
 * stencil_pwc at alpha*q = 0 and agree entrywise as dx -> 0. The two
 * exponent scalings (by sign of pe) keep every term finite; a denominator
 * smaller than the guard raises scheme_error.
 */
inline FluxStencil stencil_exact_ibp(const PecletData& p, double diffusion, double dx,
                                     IbpSide side) {
  const double aq = p.alpha * p.q;
  if (aq == 0.0) return stencil_pwc(p, diffusion, dx);
  const double r = diffusion / dx;
  const double pe = p.pe;
  const double P = 0.5 * pe - 0.25 * aq;

  if (side == IbpSide::Plus) {
    const double pep = p.pe_plus;
    if (std::fabs(pep) < kIbpDenominatorGuard)
      throw scheme_error("stencil_exact_ibp: degenerate adjusted Peclet number");
    if (pe >= 0.0) {
      const double den = -(std::expm1(-pe) + aq * std::exp(-pe));  // 1 - (1+aq)e^{-pe}
      if (std::fabs(den) < kIbpDenominatorGuard)
        throw scheme_error("stencil_exact_ibp: degenerate denominator");
      return FluxStencil{
          r * pep / den, -r * pep * std::exp(-pe) / den,
          -dx * (1.0 - 0.5 * pep - (1.0 + 0.5 * aq) * std::exp(-P)) / (pep * den),
          dx * ((1.0 + 0.5 * pep) * (1.0 + aq) * std::exp(-pe) - (1.0 - 0.5 * aq) * std::exp(-P)) /
              (pep * den)};
    }
    const double den = std::exp(pe) - (1.0 + aq);  // e^{pe}(1 - (1+aq)e^{-pe})
    if (std::fabs(den) < kIbpDenominatorGuard)
      throw scheme_error("stencil_exact_ibp: degenerate denominator");
    return FluxStencil{
        r * pep * std::exp(pe) / den, -r * pep / den,
        -dx * ((1.0 - 0.5 * pep) * std::exp(pe) - (1.0 + 0.5 * aq) * std::exp(pe - P)) /
            (pep * den),
        dx * ((1.0 + 0.5 * pep) * (1.0 + aq) - (1.0 - 0.5 * aq) * std::exp(pe - P)) / (pep * den)};
  }

  const double pem = p.pe_minus;
  if (std::fabs(pem) < kIbpDenominatorGuard)
    throw scheme_error("stencil_exact_ibp: degenerate adjusted Peclet number");
  if (pe <= 0.0) {
    const double den = std::expm1(pe) + aq * std::exp(pe);  // (1+aq)e^{pe} - 1
    if (std::fabs(den) < kIbpDenominatorGuard)
      throw scheme_error("stencil_exact_ibp: degenerate denominator");
    return FluxStencil{
        r * std::exp(pe) * pem / den, -r * pem / den,
        -dx * ((1.0 - 0.5 * pem) * (1.0 + aq) * std::exp(pe) - (1.0 - 0.5 * aq) * std::exp(P)) /
            (pem * den),
        -dx * ((1.0 + 0.5 * aq) * std::exp(P) - (1.0 + 0.5 * pem)) / (pem * den)};
  }
  const double den = (1.0 + aq) - std::exp(-pe);  // e^{-pe}((1+aq)e^{pe} - 1)
  if (std::fabs(den) < kIbpDenominatorGuard)
    throw scheme_error("stencil_exact_ibp: degenerate denominator");
  return FluxStencil{
      r * pem / den, -r * pem * std::exp(-pe) / den,
      -dx * ((1.0 - 0.5 * pem) * (1.0 + aq) - (1.0 - 0.5 * aq) * std::exp(P - pe)) / (pem * den),
      -dx * ((1.0 + 0.5 * aq) * std::exp(P - pe) - (1.0 + 0.5 * pem) * std::exp(-pe)) /
          (pem * den)};
}

/** @brief Dispatch one of the stencil families per variant.
 *
 * AutoUpwind and UpwindAdjusted pick the family matching the sign of pe
 * (piecewise-constant at pe = 0). DownwindAdjusted negates the slope
 * correction q before dispatching, so the velocity is taken from the
 * downwind end of the interval.
 */
inline FluxStencil select_stencil(FluxVariant variant, const PecletData& p, double diffusion,
                                  double dx) {
  switch (variant) {
    case FluxVariant::PiecewiseConstant:
      return stencil_pwc(p, diffusion, dx);
    case FluxVariant::DownwindAdjusted: {
      const PecletData m{p.pe, -p.q, p.alpha, p.pe_minus, p.pe_plus};
      if (m.pe > 0.0) return stencil_upwind_plus(m, diffusion, dx);
      if (m.pe < 0.0) return stencil_upwind_minus(m, diffusion, dx);
      return stencil_pwc(m, diffusion, dx);
    }
    case FluxVariant::UpwindAdjusted:
    case FluxVariant::AutoUpwind:
      if (p.pe > 0.0) return stencil_upwind_plus(p, diffusion, dx);
      if (p.pe < 0.0) return stencil_upwind_minus(p, diffusion, dx);
      return stencil_pwc(p, diffusion, dx);
  }
  throw config_error("select_stencil: unknown variant");
}

}  // namespace fluxcf
