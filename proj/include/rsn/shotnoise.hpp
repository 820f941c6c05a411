#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsn/laws.hpp"
#include "rsn/renewal.hpp"

namespace rsn {

/// Which limit theorem a statistic is normalized for.
///   NoScaleDri       X(ut) itself; h directly Riemann integrable, mu < inf.
///   NoScaleCentered  X(ut) - mu^-1 int_0^{ut} h; h non-integrable, square integrable.
///   A1, A2, A3       centred and divided by g(t) h(t); finite mean.
///   D4               X(ut) P(xi > t) / h(t); infinite mean.
enum class Regime { NoScaleDri, NoScaleCentered, A1, A2, A3, D4 };

std::string_view regime_name(Regime regime);
Regime parse_regime(std::string_view name);

struct LimitSpec {
  Regime regime = Regime::A1;
  double alpha = 2.0;
  double beta = 0.0;
  IncrementLaw law = IncrementLaw::exponential(1.0);
  ResponseFunction h = ResponseFunction::constant(1.0);
  /// Permits NoScaleCentered beyond the square-integrable (finite variance)
  /// case, whose smoothness side conditions cannot be checked here.
  bool unchecked_hypotheses = false;
};

/// Throws InadmissibleError naming the violated hypothesis.
void validate(const LimitSpec& spec);

/// Hurst index of the limit process: 1/alpha - beta (A1-A3) or alpha - beta (D4).
double hurst_index(const LimitSpec& spec);

/// X(t) = sum over S_k <= t of h(t - S_k), summed from the youngest shot to
/// the oldest; compensated summation from 10^4 shots on.
double evaluate(const RenewalPath& path, const ResponseFunction& h, double t);

/// X(t) - mu^-1 int_0^t h(y) dy.
double centered_statistic(const RenewalPath& path, const ResponseFunction& h,
                          const IncrementLaw& law, double t);

/// Root c of t l(c) / c^alpha = 1 for a Pareto law. Constant l: closed form;
/// logarithmic l (alpha = 2): bisection on the branch c >= x_m sqrt(t).
double solve_c(const IncrementLaw& law, double t);

/// Normalizing function g(t) of the scaled regimes.
double scaling_g(const LimitSpec& spec, double t);

/// Scaled statistics at times u_i t on one shared path.
std::vector<double> scaled_statistic(const LimitSpec& spec, const RenewalPath& path,
                                     std::span<const double> u_grid, double t);

/// Approximate number of shots on [0, t] (t / mu, or the renewal-function
/// asymptote when mu is infinite), for resource budgeting.
double expected_shots(const IncrementLaw& law, double t);

}  // namespace rsn
