#include "rsn/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsn/special.hpp"

namespace rsn {
namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("stable: alpha must lie in (0,2]");
  if (alpha == 1.0) throw std::invalid_argument("stable: alpha = 1 is not supported");
}

}  // namespace

double StableSpec::scale() const {
  check_alpha(alpha);
  if (alpha == 2.0) return 1.0;
  return std::pow(special::gamma(1.0 - alpha) * std::cos(kPi * alpha / 2.0), 1.0 / alpha);
}

std::complex<double> stable_cf(const StableSpec& spec, double z) {
  check_alpha(spec.alpha);
  if (spec.alpha == 2.0) return std::exp(-0.5 * z * z);
  const double a = spec.alpha;
  const double sign = (z > 0.0) - (z < 0.0);
  const double imag_sign = spec.skew == Skew::SpectrallyNegative ? 1.0 : -1.0;
  const std::complex<double> bracket(std::cos(kPi * a / 2.0),
                                     imag_sign * std::sin(kPi * a / 2.0) * sign);
  return std::exp(-std::pow(std::abs(z), a) * special::gamma(1.0 - a) * bracket);
}

std::complex<double> stable_cf_s1(double alpha, double scale, double skewness, double z) {
  const double sign = (z > 0.0) - (z < 0.0);
  const std::complex<double> bracket(1.0, -skewness * std::tan(kPi * alpha / 2.0) * sign);
  return std::exp(-std::pow(scale * std::abs(z), alpha) * bracket);
}

StableGenerator::StableGenerator(const StableSpec& spec) : alpha_(spec.alpha), scale_(1.0) {
  check_alpha(spec.alpha);
  shift_b_ = 0.0;
  factor_s_ = 1.0;
  if (alpha_ == 2.0) return;
  scale_ = spec.scale();
  const double t = spec.skewness() * std::tan(kPi * alpha_ / 2.0);
  shift_b_ = std::atan(t) / alpha_;
  factor_s_ = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha_));
}

double StableGenerator::operator()(Stream& stream) const {
  if (alpha_ == 2.0) return stream.normal();
  const double a = alpha_;
  const double v = kPi * (stream.uniform() - 0.5);
  const double w = stream.exponential();
  const double x = factor_s_ * std::sin(a * (v + shift_b_)) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - a * (v + shift_b_)) / w, (1.0 - a) / a);
  return scale_ * x;
}

double sample_stable(const StableSpec& spec, Stream& stream) {
  return StableGenerator(spec)(stream);
}

double sample_positive_stable(double alpha, Stream& stream) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("positive stable: alpha must lie in (0,1)");
  }
  const double u = kPi * stream.uniform();
  const double e = stream.exponential();
  const double a = alpha;
  return std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) *
         std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
}

double sample_subordinator_increment(double alpha, double dt, Stream& stream) {
  if (!(dt > 0.0)) throw std::invalid_argument("subordinator increment: dt must be positive");
  const double scale = std::pow(special::gamma(1.0 - alpha) * dt, 1.0 / alpha);
  return scale * sample_positive_stable(alpha, stream);
}

double abs_moment(double alpha, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("abs_moment: r must be positive");
  if (!(r < alpha)) throw std::invalid_argument("abs_moment: r >= alpha, moment is infinite");
  check_alpha(alpha);
  if (alpha == 2.0) {
    // E|N(0,1)|^r = 2^{r/2} Gamma((r+1)/2) / sqrt(pi).
    return std::pow(2.0, r / 2.0) * special::gamma((r + 1.0) / 2.0) / std::sqrt(kPi);
  }
  return 2.0 * special::gamma(r + 1.0) / (kPi * r) * std::sin(r * kPi / 2.0) *
         special::gamma(1.0 - r / alpha) *
         std::pow(std::abs(special::gamma(1.0 - alpha)), r / alpha) *
         std::cos(kPi * r / 2.0 - kPi * r / alpha);
}

}  // namespace rsn
