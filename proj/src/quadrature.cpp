#include "rsn/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsn/errors.hpp"

namespace rsn {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol) {
  if (a == b) return {};
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 18, rel_tol, &error, &l1);
  const double allowed = std::max(abs_tol, rel_tol * std::abs(value));
  if (!std::isfinite(value) || error > allowed) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: value " << value
        << ", error estimate " << error << " > " << allowed;
    throw QuadratureError(msg.str());
  }
  return {value, error};
}

QuadratureResult integrate_power_singular(const std::function<double(double)>& f,
                                          double exponent, double length, double abs_tol,
                                          double rel_tol) {
  if (!(exponent > -1.0)) throw QuadratureError("integrate_power_singular: exponent <= -1");
  if (length <= 0.0) return {};
  // w = L s^m, with the integer m chosen so that s^{m(1+e)-1} vanishes to
  // third order at s = 0. f(L s^m) stays smooth because m is an integer.
  const double p = 1.0 + exponent;
  const double m = std::max(1.0, std::ceil(4.0 / p));
  const double power = m * p - 1.0;
  const double scale = std::pow(length, p) * m;
  const auto transformed = [&](double s) {
    return s == 0.0 ? 0.0 : std::pow(s, power) * f(length * std::pow(s, m));
  };
  const QuadratureResult r =
      integrate(transformed, 0.0, 1.0, abs_tol / std::max(scale, 1e-300), rel_tol);
  return {scale * r.value, scale * r.error};
}

}  // namespace rsn
