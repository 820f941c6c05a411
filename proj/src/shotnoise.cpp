#include "rsn/shotnoise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "rsn/errors.hpp"
#include "rsn/special.hpp"

namespace rsn {
namespace {

constexpr std::size_t kCompensateFrom = 10000;

// Sum f(t - S_k) over the first n arrivals, youngest shot first.
template <class F>
double sum_shots(const std::vector<double>& arrivals, std::size_t n, double t, F&& f) {
  if (n < kCompensateFrom) {
    double sum = 0.0;
    for (std::size_t k = n; k-- > 0;) sum += f(t - arrivals[k]);
    return sum;
  }
  // Neumaier's variant of Kahan summation.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double term = f(t - arrivals[k]);
    const double next = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - next) + term;
    } else {
      carry += (term - next) + sum;
    }
    sum = next;
  }
  return sum + carry;
}

[[noreturn]] void inadmissible(const LimitSpec& spec, const std::string& why) {
  std::ostringstream msg;
  msg << regime_name(spec.regime) << ": " << why;
  throw InadmissibleError(msg.str());
}

void require_rv_index(const LimitSpec& spec) {
  const auto index = spec.h.rv_index();
  if (!index || !spec.h.eventually_positive()) {
    inadmissible(spec, "response " + spec.h.describe() +
                           " is not regularly varying with h > 0 (Window and ExpDecay are "
                           "allowed only in the no-scaling regimes)");
  }
  if (std::abs(*index - spec.beta) > 1e-12) {
    std::ostringstream msg;
    msg << "response regular-variation index " << *index << " differs from beta=" << spec.beta;
    inadmissible(spec, msg.str());
  }
}

void require_pareto_tail(const LimitSpec& spec) {
  if (!spec.law.is_pareto() || spec.law.tail_index() != spec.alpha) {
    std::ostringstream msg;
    msg << "increment law " << spec.law.describe() << " must be Pareto with tail index alpha="
        << spec.alpha;
    inadmissible(spec, msg.str());
  }
}

}  // namespace

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::NoScaleDri: return "NOSCALE_DRI";
    case Regime::NoScaleCentered: return "NOSCALE_CENTERED";
    case Regime::A1: return "A1";
    case Regime::A2: return "A2";
    case Regime::A3: return "A3";
    case Regime::D4: return "D4";
  }
  return "?";
}

Regime parse_regime(std::string_view name) {
  for (Regime r : {Regime::NoScaleDri, Regime::NoScaleCentered, Regime::A1, Regime::A2,
                   Regime::A3, Regime::D4}) {
    if (regime_name(r) == name) return r;
  }
  throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
}

void validate(const LimitSpec& spec) {
  const double a = spec.alpha;
  const double b = spec.beta;
  if (!std::isfinite(a) || !std::isfinite(b)) inadmissible(spec, "alpha and beta must be finite");
  std::ostringstream msg;
  switch (spec.regime) {
    case Regime::NoScaleDri:
      if (!spec.law.finite_mean()) inadmissible(spec, "requires a finite mean");
      if (!spec.h.directly_riemann_integrable()) {
        inadmissible(spec, "response " + spec.h.describe() + " is not directly Riemann integrable");
      }
      return;
    case Regime::NoScaleCentered:
      if (!spec.law.finite_mean()) inadmissible(spec, "requires a finite mean");
      if (spec.h.integrable()) {
        inadmissible(spec, "response is integrable; use NOSCALE_DRI");
      }
      if (!spec.unchecked_hypotheses) {
        if (!spec.law.finite_variance()) {
          inadmissible(spec, "only the finite-variance case is checked; set "
                             "unchecked_hypotheses to run heavier tails");
        }
        if (!spec.h.square_integrable()) {
          inadmissible(spec, "response " + spec.h.describe() + " is not square integrable");
        }
      }
      return;
    case Regime::A1:
    case Regime::A2:
      if (a != 2.0) inadmissible(spec, "requires alpha = 2");
      if (!(b >= 0.0 && b < 0.5)) {
        msg << "beta=" << b << " violates bound (0,1/2)";
        inadmissible(spec, msg.str());
      }
      if (spec.regime == Regime::A1 && !spec.law.finite_variance()) {
        inadmissible(spec, "requires a finite variance, got " + spec.law.describe());
      }
      if (spec.regime == Regime::A2 &&
          (!spec.law.is_pareto() || spec.law.tail_index() != 2.0)) {
        inadmissible(spec, "requires a Pareto law with tail index 2, got " + spec.law.describe());
      }
      require_rv_index(spec);
      return;
    case Regime::A3:
      if (!(a > 1.0 && a < 2.0)) inadmissible(spec, "requires 1 < alpha < 2");
      if (!(b >= 0.0 && b < 1.0 / a)) {
        msg << "beta=" << b << " violates bound (0,1/α) with 1/alpha=" << 1.0 / a;
        inadmissible(spec, msg.str());
      }
      require_pareto_tail(spec);
      require_rv_index(spec);
      return;
    case Regime::D4:
      if (!(a > 0.0 && a < 1.0)) inadmissible(spec, "requires 0 < alpha < 1");
      if (!(b >= 0.0 && b <= a)) {
        msg << "beta=" << b << " violates bound [0,α] with alpha=" << a;
        inadmissible(spec, msg.str());
      }
      require_pareto_tail(spec);
      require_rv_index(spec);
      return;
  }
}

double hurst_index(const LimitSpec& spec) {
  switch (spec.regime) {
    case Regime::A1:
    case Regime::A2:
    case Regime::A3: return 1.0 / spec.alpha - spec.beta;
    case Regime::D4: return spec.alpha - spec.beta;
    default: throw InadmissibleError("no-scaling regimes have no Hurst index");
  }
}

double evaluate(const RenewalPath& path, const ResponseFunction& h, double t) {
  const std::size_t n = count(path, t);
  return sum_shots(path.arrivals, n, t, [&](double age) { return h(age); });
}

double centered_statistic(const RenewalPath& path, const ResponseFunction& h,
                          const IncrementLaw& law, double t) {
  if (!law.finite_mean()) throw InadmissibleError("centering requires a finite mean");
  return evaluate(path, h, t) - h.integral(t) / law.mean();
}

double solve_c(const IncrementLaw& law, double t) {
  const auto* p = std::get_if<Pareto>(&law.family());
  if (p == nullptr || p->alpha > 2.0) {
    throw std::invalid_argument("solve_c: requires a Pareto law with tail index in (0,2]");
  }
  if (!(t > 0.0)) throw std::invalid_argument("solve_c: t must be positive");
  if (law.slow_varying() == SlowVarying::Constant) {
    return std::pow(law.slow_varying_at(t) * t, 1.0 / p->alpha);
  }
  // c^2 = t * 2 x_m^2 ln(c / x_m). f(c) = c^2 - t l(c) is minimal at
  // c* = x_m sqrt(t) with f(c*) = t x_m^2 (1 - ln t); the normalizer is the
  // root above c*, which exists iff t > e.
  const double xm = p->scale;
  const auto f = [&](double c) { return c * c - t * 2.0 * xm * xm * std::log(c / xm); };
  double lo = xm * std::sqrt(t);
  if (!(f(lo) < 0.0)) {
    std::ostringstream msg;
    msg << "solve_c: t=" << t << " too small, c^2 = t l(c) has no root above x_m sqrt(t)";
    throw std::invalid_argument(msg.str());
  }
  double hi = 2.0 * lo;
  while (f(hi) <= 0.0) hi *= 2.0;
  for (int iter = 0; iter < 400 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double scaling_g(const LimitSpec& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("scaling_g: t must be positive");
  const double mu = spec.law.mean();
  switch (spec.regime) {
    case Regime::A1: return std::sqrt(spec.law.variance() * t / (mu * mu * mu));
    case Regime::A2: return std::pow(mu, -1.5) * solve_c(spec.law, t);
    case Regime::A3: return std::pow(mu, -1.0 - 1.0 / spec.alpha) * solve_c(spec.law, t);
    case Regime::D4: return 1.0 / spec.law.tail_prob(t);
    default: throw InadmissibleError("no-scaling regimes have no normalizer g(t)");
  }
}

std::vector<double> scaled_statistic(const LimitSpec& spec, const RenewalPath& path,
                                     std::span<const double> u_grid, double t) {
  validate(spec);
  if (!(t > 0.0)) throw std::invalid_argument("scaled_statistic: t must be positive");
  std::vector<double> out;
  out.reserve(u_grid.size());
  const ResponseFunction& h = spec.h;
  double g = 0.0;
  if (spec.regime != Regime::NoScaleDri && spec.regime != Regime::NoScaleCentered) {
    g = scaling_g(spec, t);
  }
  for (double u : u_grid) {
    if (!(u > 0.0)) throw std::invalid_argument("scaled_statistic: u-grid must be positive");
    const double x = u * t;
    const std::size_t n = count(path, x);  // rejects x beyond the horizon
    switch (spec.regime) {
      case Regime::NoScaleDri: out.push_back(evaluate(path, h, x)); break;
      case Regime::NoScaleCentered:
        out.push_back(centered_statistic(path, h, spec.law, x));
        break;
      case Regime::A1:
      case Regime::A2:
      case Regime::A3: {
        const double shots =
            sum_shots(path.arrivals, n, x, [&](double age) { return h.ratio(age, t); });
        out.push_back((shots - h.integral_ratio(x, t) / spec.law.mean()) / g);
        break;
      }
      case Regime::D4: {
        const double shots =
            sum_shots(path.arrivals, n, x, [&](double age) { return h.ratio(age, t); });
        out.push_back(shots / g);
        break;
      }
    }
  }
  return out;
}

double expected_shots(const IncrementLaw& law, double t) {
  if (law.finite_mean()) return t / law.mean();
  const double a = law.tail_index();
  return 1.0 / (special::gamma(1.0 - a) * special::gamma(1.0 + a) *
                law.tail_prob(std::max(t, 1e-300)));
}

}  // namespace rsn
