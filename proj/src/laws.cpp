#include "rsn/laws.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rsn/errors.hpp"

namespace rsn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// Marsaglia-Tsang for shape >= 1; boosted by U^(1/shape) below 1.
double sample_standard_gamma(double shape, Stream& stream) {
  if (shape < 1.0) {
    return sample_standard_gamma(shape + 1.0, stream) *
           std::pow(stream.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

IncrementLaw::IncrementLaw(Family family) : family_(family) {
  std::visit(
      Overloaded{
          [&](const Exponential& e) {
            mean_ = 1.0 / e.rate;
            variance_ = 1.0 / (e.rate * e.rate);
            tail_index_ = kInf;
          },
          [&](const Uniform& u) {
            mean_ = 0.5 * (u.a + u.b);
            variance_ = (u.b - u.a) * (u.b - u.a) / 12.0;
            tail_index_ = kInf;
          },
          [&](const GammaLaw& g) {
            mean_ = g.shape / g.rate;
            variance_ = g.shape / (g.rate * g.rate);
            tail_index_ = kInf;
          },
          [&](const Pareto& p) {
            const double a = p.alpha;
            mean_ = a > 1.0 ? a * p.scale / (a - 1.0) : kInf;
            variance_ = a > 2.0 ? p.scale * p.scale * a / ((a - 1.0) * (a - 1.0) * (a - 2.0)) : kInf;
            tail_index_ = a;
            slow_varying_ = a == 2.0 ? SlowVarying::Logarithmic : SlowVarying::Constant;
          },
      },
      family_);
}

IncrementLaw IncrementLaw::exponential(double rate) {
  require(positive_finite(rate), "Exponential: rate must be positive");
  return IncrementLaw(Exponential{rate});
}

IncrementLaw IncrementLaw::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a >= 0.0 && a < b,
          "Uniform: need 0 <= a < b");
  return IncrementLaw(Uniform{a, b});
}

IncrementLaw IncrementLaw::gamma(double shape, double rate) {
  require(positive_finite(shape) && positive_finite(rate),
          "Gamma: shape and rate must be positive");
  return IncrementLaw(GammaLaw{shape, rate});
}

IncrementLaw IncrementLaw::pareto(double alpha, double scale) {
  require(positive_finite(alpha) && positive_finite(scale),
          "Pareto: tail index and scale must be positive");
  return IncrementLaw(Pareto{alpha, scale});
}

bool IncrementLaw::finite_mean() const { return std::isfinite(mean_); }
bool IncrementLaw::finite_variance() const { return std::isfinite(variance_); }

double IncrementLaw::slow_varying_at(double t) const {
  const auto* p = std::get_if<Pareto>(&family_);
  if (p == nullptr) throw std::invalid_argument("slowly varying part is defined for Pareto laws only");
  if (slow_varying_ == SlowVarying::Logarithmic) {
    return t <= p->scale ? 0.0 : 2.0 * p->scale * p->scale * std::log(t / p->scale);
  }
  return std::pow(p->scale, p->alpha);
}

double IncrementLaw::tail_prob(double t) const {
  if (t <= 0.0) return 1.0;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return std::exp(-e.rate * t); },
          [&](const Uniform& u) {
            if (t < u.a) return 1.0;
            if (t >= u.b) return 0.0;
            return (u.b - t) / (u.b - u.a);
          },
          [&](const GammaLaw& g) { return boost::math::gamma_q(g.shape, g.rate * t); },
          [&](const Pareto& p) { return t < p.scale ? 1.0 : std::pow(p.scale / t, p.alpha); },
      },
      family_);
}

double IncrementLaw::quantile(double u) const {
  require(u >= 0.0 && u < 1.0, "quantile: need 0 <= u < 1");
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return -std::log1p(-u) / e.rate; },
          [&](const Uniform& un) { return un.a + u * (un.b - un.a); },
          [&](const GammaLaw&) -> double {
            throw std::invalid_argument("Gamma law has no closed-form quantile");
          },
          [&](const Pareto& p) { return p.scale * std::pow(1.0 - u, -1.0 / p.alpha); },
      },
      family_);
}

double IncrementLaw::sample(Stream& stream) const {
  if (const auto* g = std::get_if<GammaLaw>(&family_)) {
    return sample_standard_gamma(g->shape, stream) / g->rate;
  }
  return quantile(stream.uniform());
}

double IncrementLaw::stationary_delay_cdf(double t) const {
  if (!finite_mean()) throw InadmissibleError("stationary delay requires a finite mean");
  if (t <= 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return -std::expm1(-e.rate * t); },
          [&](const Uniform& u) {
            if (t <= u.a) return t / mean_;
            if (t >= u.b) return 1.0;
            const double w = u.b - u.a;
            return (u.a + (w * w - (u.b - t) * (u.b - t)) / (2.0 * w)) / mean_;
          },
          [&](const GammaLaw& g) {
            const double x = g.rate * t;
            return x / g.shape * boost::math::gamma_q(g.shape, x) +
                   boost::math::gamma_p(g.shape + 1.0, x);
          },
          [&](const Pareto& p) {
            if (t <= p.scale) return t / mean_;
            const double a = p.alpha;
            return (p.scale + p.scale / (a - 1.0) * (1.0 - std::pow(p.scale / t, a - 1.0))) / mean_;
          },
      },
      family_);
}

double IncrementLaw::stationary_delay_quantile(double u) const {
  if (!finite_mean()) throw InadmissibleError("stationary delay requires a finite mean");
  require(u >= 0.0 && u < 1.0, "stationary_delay_quantile: need 0 <= u < 1");
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return -std::log1p(-u) / e.rate; },
          [&](const Uniform& un) {
            const double target = u * mean_;
            if (target <= un.a) return target;
            const double w = un.b - un.a;
            const double rest = w * w - 2.0 * w * (target - un.a);
            return un.b - std::sqrt(std::max(rest, 0.0));
          },
          [&](const GammaLaw&) -> double {
            throw std::invalid_argument("Gamma stationary delay has no closed-form quantile");
          },
          [&](const Pareto& p) {
            const double a = p.alpha;
            // F*(x_m) = (a - 1) / a; beyond it (x_m / t)^(a-1) = a (1 - u).
            if (u <= (a - 1.0) / a) return u * mean_;
            return p.scale * std::pow(a * (1.0 - u), -1.0 / (a - 1.0));
          },
      },
      family_);
}

double IncrementLaw::sample_stationary_delay(Stream& stream) const {
  if (!finite_mean()) throw InadmissibleError("stationary delay requires a finite mean");
  if (const auto* g = std::get_if<GammaLaw>(&family_)) {
    // Equilibrium law = U * (size-biased law); size-biased Gamma(k, r) is Gamma(k + 1, r).
    const double biased = sample_standard_gamma(g->shape + 1.0, stream) / g->rate;
    return stream.uniform() * biased;
  }
  return stationary_delay_quantile(stream.uniform());
}

std::string IncrementLaw::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const Exponential& e) { out << "Exponential(rate=" << e.rate << ")"; },
                 [&](const Uniform& u) { out << "Uniform(a=" << u.a << ", b=" << u.b << ")"; },
                 [&](const GammaLaw& g) {
                   out << "Gamma(shape=" << g.shape << ", rate=" << g.rate << ")";
                 },
                 [&](const Pareto& p) {
                   out << "Pareto(alpha=" << p.alpha << ", scale=" << p.scale << ")";
                 },
             },
             family_);
  return out.str();
}

// ---------------------------------------------------------------------------

ResponseFunction::ResponseFunction(Family family) : family_(family) {
  std::visit(Overloaded{
                 [&](const PowerDecay& p) {
                   rv_index_ = p.beta;
                   integrable_ = p.beta > 1.0;
                   square_integrable_ = p.beta > 0.5;
                   dri_ = integrable_;
                 },
                 [&](const ExpDecay&) {
                   integrable_ = true;
                   square_integrable_ = true;
                   dri_ = true;
                 },
                 [&](const Window& w) {
                   integrable_ = true;
                   square_integrable_ = true;
                   dri_ = true;
                   monotone_from_ = w.b;
                 },
                 [&](const Constant& c) {
                   // The zero response is trivially integrable and has no index.
                   if (c.value == 0.0) {
                     integrable_ = square_integrable_ = dri_ = true;
                   } else {
                     rv_index_ = 0.0;
                   }
                 },
                 [&](const ParetoTailMatch& p) {
                   rv_index_ = p.alpha;
                   integrable_ = p.alpha > 1.0;
                   square_integrable_ = p.alpha > 0.5;
                   dri_ = integrable_;
                 },
             },
             family_);
}

ResponseFunction ResponseFunction::power_decay(double beta, double offset) {
  require(std::isfinite(beta) && beta >= 0.0 && positive_finite(offset),
          "PowerDecay: need beta >= 0 and offset > 0");
  return ResponseFunction(PowerDecay{beta, offset});
}

ResponseFunction ResponseFunction::exp_decay(double rate) {
  require(positive_finite(rate), "ExpDecay: rate must be positive");
  return ResponseFunction(ExpDecay{rate});
}

ResponseFunction ResponseFunction::window(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a >= 0.0 && b > a, "Window: need 0 <= a < b");
  return ResponseFunction(Window{a, b});
}

ResponseFunction ResponseFunction::constant(double value) {
  require(std::isfinite(value) && value >= 0.0, "Constant: value must be >= 0");
  return ResponseFunction(Constant{value});
}

ResponseFunction ResponseFunction::pareto_tail_match(double alpha, double scale,
                                                     double multiplier) {
  require(positive_finite(alpha) && positive_finite(scale) && positive_finite(multiplier),
          "ParetoTailMatch: alpha, scale and multiplier must be positive");
  return ResponseFunction(ParetoTailMatch{alpha, scale, multiplier});
}

bool ResponseFunction::eventually_positive() const {
  return !std::holds_alternative<Window>(family_);
}

namespace {

double pareto_shape(const ParetoTailMatch& p, double t) {
  return t <= p.scale ? 1.0 : std::pow(p.scale / t, p.alpha);
}

// Integral of min(1, (x_m / y)^alpha) over [0, T].
double pareto_shape_integral(const ParetoTailMatch& p, double T) {
  if (T <= p.scale) return T;
  if (p.alpha == 1.0) return p.scale * (1.0 + std::log(T / p.scale));
  return p.scale * (1.0 + (std::pow(p.scale / T, p.alpha - 1.0) - 1.0) / (1.0 - p.alpha));
}

}  // namespace

double ResponseFunction::operator()(double t) const {
  return std::visit(Overloaded{
                        [&](const PowerDecay& p) { return std::pow(t + p.offset, -p.beta); },
                        [&](const ExpDecay& e) { return std::exp(-e.rate * t); },
                        [&](const Window& w) { return (t >= w.a && t < w.b) ? 1.0 : 0.0; },
                        [&](const Constant& c) { return c.value; },
                        [&](const ParetoTailMatch& p) { return p.multiplier * pareto_shape(p, t); },
                    },
                    family_);
}

double ResponseFunction::integral(double T) const {
  if (T <= 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const PowerDecay& p) {
            if (p.beta == 0.0) return T;
            if (p.beta == 1.0) return std::log1p(T / p.offset);
            const double e = 1.0 - p.beta;
            return (std::pow(T + p.offset, e) - std::pow(p.offset, e)) / e;
          },
          [&](const ExpDecay& e) { return -std::expm1(-e.rate * T) / e.rate; },
          [&](const Window& w) { return std::max(0.0, std::min(T, w.b) - w.a); },
          [&](const Constant& c) { return c.value * T; },
          [&](const ParetoTailMatch& p) { return p.multiplier * pareto_shape_integral(p, T); },
      },
      family_);
}

double ResponseFunction::total_integral() const {
  if (!integrable_) return kInf;
  return std::visit(Overloaded{
                        [&](const PowerDecay& p) {
                          return std::pow(p.offset, 1.0 - p.beta) / (p.beta - 1.0);
                        },
                        [&](const ExpDecay& e) { return 1.0 / e.rate; },
                        [&](const Window& w) { return w.b - w.a; },
                        [&](const Constant& c) { return c.value == 0.0 ? 0.0 : kInf; },
                        [&](const ParetoTailMatch& p) {
                          return p.multiplier * p.scale * p.alpha / (p.alpha - 1.0);
                        },
                    },
                    family_);
}

double ResponseFunction::ratio(double x, double t) const {
  return std::visit(
      Overloaded{
          [&](const PowerDecay& p) { return std::pow((x + p.offset) / (t + p.offset), -p.beta); },
          [&](const ExpDecay& e) { return std::exp(-e.rate * (x - t)); },
          [&](const Window&) { return (*this)(x) / (*this)(t); },
          [&](const Constant&) { return 1.0; },
          [&](const ParetoTailMatch& p) { return pareto_shape(p, x) / pareto_shape(p, t); },
      },
      family_);
}

double ResponseFunction::integral_ratio(double T, double t) const {
  return std::visit(Overloaded{
                        [&](const Constant&) { return T; },
                        [&](const ParetoTailMatch& p) {
                          return pareto_shape_integral(p, T) / pareto_shape(p, t);
                        },
                        [&](const auto&) { return integral(T) / (*this)(t); },
                    },
                    family_);
}

std::string ResponseFunction::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const PowerDecay& p) {
                   out << "PowerDecay(beta=" << p.beta << ", offset=" << p.offset << ")";
                 },
                 [&](const ExpDecay& e) { out << "ExpDecay(rate=" << e.rate << ")"; },
                 [&](const Window& w) { out << "Window(a=" << w.a << ", b=" << w.b << ")"; },
                 [&](const Constant& c) { out << "Constant(value=" << c.value << ")"; },
                 [&](const ParetoTailMatch& p) {
                   out << "ParetoTailMatch(alpha=" << p.alpha << ", scale=" << p.scale
                       << ", multiplier=" << p.multiplier << ")";
                 },
             },
             family_);
  return out.str();
}

}  // namespace rsn
