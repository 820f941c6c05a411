#pragma once

// Totally skewed alpha-stable laws.
//
// The limit W(1) of the centred renewal counting process has characteristic
// function
//
//   exp{ -|z|^a Gamma(1-a) (cos(pi a/2) + i sin(pi a/2) sign z) }.
//
// Writing s^a = Gamma(1-a) cos(pi a/2) (positive for 0<a<1 and 1<a<2) this is
// the S1 form exp{ -s^a |z|^a (1 - i k tan(pi a/2) sign z) } with skewness
// k = -1 (spectrally negative). Flipping the sign of the imaginary part gives
// k = +1. That mapping is the only place the two parametrizations meet.

#include <complex>

#include "rsn/rng.hpp"

namespace rsn {

enum class Skew { SpectrallyNegative, SpectrallyPositive };

struct StableSpec {
  double alpha;
  Skew skew = Skew::SpectrallyNegative;

  /// S1 scale s = (Gamma(1-a) cos(pi a/2))^(1/a); alpha = 2 gives 1.
  double scale() const;
  /// S1 skewness: -1 or +1.
  double skewness() const { return skew == Skew::SpectrallyNegative ? -1.0 : 1.0; }
};

/// Characteristic function as written with Gamma(1-a) (alpha = 2: e^{-z^2/2}).
std::complex<double> stable_cf(const StableSpec& spec, double z);

/// Same law in S1 form with explicit scale and skewness.
std::complex<double> stable_cf_s1(double alpha, double scale, double skewness, double z);

/// Chambers-Mallows-Stuck sampler with the per-law constants precomputed.
class StableGenerator {
 public:
  explicit StableGenerator(const StableSpec& spec);
  double operator()(Stream& stream) const;

 private:
  double alpha_;
  double scale_;
  double shift_b_;
  double factor_s_;
};

/// One variate by the Chambers-Mallows-Stuck transformation. alpha = 2 gives
/// a standard normal; alpha = 1 is rejected.
double sample_stable(const StableSpec& spec, Stream& stream);

/// Positive stable S with E exp(-u S) = exp(-u^alpha), 0 < alpha < 1
/// (Kanter's representation).
double sample_positive_stable(double alpha, Stream& stream);

/// D(dt) for the subordinator with -log E exp(-u D(1)) = Gamma(1-alpha) u^alpha.
double sample_subordinator_increment(double alpha, double dt, Stream& stream);

/// E|W|^r for W with the characteristic function above, 0 < r < alpha < 2.
/// alpha = 2 (standard normal) is handled in closed form.
double abs_moment(double alpha, double r);

}  // namespace rsn
