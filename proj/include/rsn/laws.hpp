#pragma once

// Parametric increment laws and response functions.
//
// Both families are closed: every quantity the limit theorems ask about
// (mean, variance, tail index, slowly varying part, regular-variation index
// of h, integrals of h) is known analytically for each member.

#include <optional>
#include <string>
#include <variant>

#include "rsn/rng.hpp"

namespace rsn {

struct Exponential {
  double rate;
};
struct Uniform {
  double a;
  double b;
};
struct GammaLaw {
  double shape;
  double rate;
};
struct Pareto {
  double alpha;
  double scale;  // x_m
};

/// Shape of the slowly varying function l in P(xi > t) ~ t^-alpha l(t) (or in
/// E[xi^2 1{xi <= t}] ~ l(t) when alpha = 2).
enum class SlowVarying { NotApplicable, Constant, Logarithmic };

class IncrementLaw {
 public:
  using Family = std::variant<Exponential, Uniform, GammaLaw, Pareto>;

  static IncrementLaw exponential(double rate);
  static IncrementLaw uniform(double a, double b);
  static IncrementLaw gamma(double shape, double rate);
  static IncrementLaw pareto(double alpha, double scale);

  const Family& family() const { return family_; }
  bool is_pareto() const { return std::holds_alternative<Pareto>(family_); }

  /// mu; +inf for Pareto with alpha <= 1.
  double mean() const { return mean_; }
  /// sigma^2; +inf for Pareto with alpha <= 2.
  double variance() const { return variance_; }
  /// Tail index alpha; +inf for the light-tailed families.
  double tail_index() const { return tail_index_; }
  bool finite_mean() const;
  bool finite_variance() const;
  SlowVarying slow_varying() const { return slow_varying_; }
  /// l(t). Constant case: x_m^alpha. Logarithmic (Pareto alpha = 2):
  /// 2 x_m^2 ln(t / x_m), the exact truncated second moment.
  double slow_varying_at(double t) const;
  /// Every supported family is non-lattice.
  constexpr bool lattice() const { return false; }

  double cdf(double t) const { return 1.0 - tail_prob(t); }
  double tail_prob(double t) const;
  /// Inverse CDF; defined for the Exponential, Uniform and Pareto families.
  double quantile(double u) const;
  double sample(Stream& stream) const;

  /// F*(t) = mu^-1 * integral_0^t P(xi > x) dx.
  double stationary_delay_cdf(double t) const;
  /// Inverse of F*; defined for the Exponential, Uniform and Pareto families.
  double stationary_delay_quantile(double u) const;
  double sample_stationary_delay(Stream& stream) const;

  std::string describe() const;

 private:
  explicit IncrementLaw(Family family);

  Family family_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  double tail_index_ = 0.0;
  SlowVarying slow_varying_ = SlowVarying::NotApplicable;
};

struct PowerDecay {
  double beta;
  double offset;  // h(t) = (t + offset)^-beta
};
struct ExpDecay {
  double rate;
};
struct Window {
  double a;
  double b;  // indicator of [a, b)
};
struct Constant {
  double value;
};
struct ParetoTailMatch {
  double alpha;
  double scale;
  double multiplier;  // h(t) = multiplier * min(1, (scale / t)^alpha)
};

class ResponseFunction {
 public:
  using Family = std::variant<PowerDecay, ExpDecay, Window, Constant, ParetoTailMatch>;

  static ResponseFunction power_decay(double beta, double offset);
  static ResponseFunction exp_decay(double rate);
  static ResponseFunction window(double a, double b);
  static ResponseFunction constant(double value);
  static ResponseFunction pareto_tail_match(double alpha, double scale, double multiplier);

  const Family& family() const { return family_; }

  double operator()(double t) const;
  /// Integral of h over [0, T] via the closed-form antiderivative.
  double integral(double T) const;
  /// Integral over [0, inf); +inf when h is not integrable.
  double total_integral() const;

  /// h(x) / h(t), computed so that the constant family yields exactly 1.
  double ratio(double x, double t) const;
  /// integral(T) / h(t), computed so that the constant family yields exactly T.
  double integral_ratio(double T, double t) const;

  /// Regular-variation index beta at infinity; empty for the families that
  /// are only flagged directly Riemann integrable (ExpDecay, Window).
  std::optional<double> rv_index() const { return rv_index_; }
  bool integrable() const { return integrable_; }
  bool square_integrable() const { return square_integrable_; }
  bool directly_riemann_integrable() const { return dri_; }
  /// h is nonincreasing on [monotone_from, inf).
  double monotone_from() const { return monotone_from_; }
  /// h(t) > 0 for every t >= 0 (fails only for Window).
  bool eventually_positive() const;

  std::string describe() const;

 private:
  explicit ResponseFunction(Family family);

  Family family_;
  std::optional<double> rv_index_;
  bool integrable_ = false;
  bool square_integrable_ = false;
  bool dri_ = false;
  double monotone_from_ = 0.0;
};

inline double tail_prob(const IncrementLaw& law, double t) { return law.tail_prob(t); }
inline double sample_increment(const IncrementLaw& law, Stream& stream) {
  return law.sample(stream);
}
inline double stationary_delay_sample(const IncrementLaw& law, Stream& stream) {
  return law.sample_stationary_delay(stream);
}
inline double response_eval(const ResponseFunction& h, double t) { return h(t); }
inline double response_integral(const ResponseFunction& h, double T) {
  return h.integral(T);
}

}  // namespace rsn
