// Test-only oracles, independent of the stencil implementations they check:
// adaptive quadrature of the integral flux representation and a dense
// Gaussian-elimination solver.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-14) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Homogeneous flux of the local boundary-value problem by quadrature of the
/// integral representation with quadratic Lambda:
///   Lambda(eta) = pe*(eta-1/2) + aq*(eta-1/2)^2.
/// Scaled by the endpoint value of exp(-Lambda) so the integrand stays O(1).
inline double quadrature_homogeneous_flux(double pe, double aq, double diffusion, double dx,
                                          double c_left, double c_right) {
  if (pe >= 0.0) {
    const double pep = pe - aq;
    const double I = adaptive_simpson(
        [&](double eta) { return std::exp(-pep * eta - aq * eta * eta); }, 0.0, 1.0);
    return -(diffusion / dx) * (c_right * std::exp(-pe) - c_left) / I;
  }
  const double pem = pe + aq;
  const double I = adaptive_simpson(
      [&](double eta) {
        const double u = 1.0 - eta;
        return std::exp(pem * u - aq * u * u);
      },
      0.0, 1.0);
  return -(diffusion / dx) * (c_right - c_left * std::exp(pe)) / I;
}

/// Inhomogeneous flux by quadrature (same scaling strategy).
inline double quadrature_inhomogeneous_flux(double pe, double aq, double dx, double s_left,
                                            double s_right) {
  std::function<double(double)> g;
  if (pe >= 0.0) {
    const double pep = pe - aq;
    g = [=](double eta) { return std::exp(-pep * eta - aq * eta * eta); };
  } else {
    const double pem = pe + aq;
    g = [=](double eta) {
      const double u = 1.0 - eta;
      return std::exp(pem * u - aq * u * u);
    };
  }
  const double I = adaptive_simpson(g, 0.0, 1.0);
  const double IL = adaptive_simpson([&](double eta) { return (eta - 0.5) * g(eta); }, 0.0, 0.5);
  const double IR = adaptive_simpson([&](double eta) { return (eta - 0.5) * g(eta); }, 0.5, 1.0);
  return -dx * (s_left * IL + s_right * IR) / I;
}

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const size_t n = b.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      if (m == 0.0) continue;
      for (size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (size_t i = n; i-- > 0;) {
    double s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace oracles
