#pragma once

#include <functional>

namespace rsn {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on a finite interval. Throws
/// QuadratureError when the error estimate exceeds max(abs_tol,
/// rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-12);

/// Integral over [0, length] of f(w) * w^exponent, with exponent > -1 and f
/// smooth. The substitution w = length * s^m (integer m >= 4 / (1+exponent))
/// turns the singularity at w = 0 into a zero of order at least 3.
QuadratureResult integrate_power_singular(const std::function<double(double)>& f,
                                          double exponent, double length,
                                          double abs_tol = 1e-12, double rel_tol = 1e-12);

}  // namespace rsn
