#include "rsn/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rsn/errors.hpp"
#include "rsn/quadrature.hpp"
#include "rsn/renewal.hpp"
#include "rsn/special.hpp"
#include "rsn/stable.hpp"

namespace rsn {
namespace {

constexpr double kQuadAbs = 1e-10;
constexpr double kQuadRel = 1e-10;

void check_inverse_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": alpha must lie in (0,1)");
  }
}

double checked_gamma(double x, const char* what) {
  if (special::is_gamma_pole(x)) {
    std::ostringstream msg;
    msg << "moments: Gamma(" << what << ") has a pole at " << x;
    throw std::domain_error(msg.str());
  }
  return special::gamma(x);
}

// (u-a)^{1-beta} - (u-b)^{1-beta} for a < b <= u, accurate when b - a << u - a.
double kernel_mass(double u, double a, double b, double q, double pa) {
  const double gap = u - a;
  const double w = b - a;
  if (w < 1e-3 * gap) return -pa * std::expm1(q * std::log1p(-w / gap));
  return pa - std::pow(u - b, q);
}

// int_0^t1 (t1-y)^-b (t2-y)^-b y^{a-1} ((t1-y)^a + (t2-y)^a) dy
double covariance_integral(double a, double b, double t1, double t2) {
  const double half = 0.5 * t1;
  const auto left = [=](double y) {
    const double x1 = t1 - y;
    const double x2 = t2 - y;
    return std::pow(x1 * x2, -b) * (std::pow(x1, a) + std::pow(x2, a));
  };
  double total = integrate_power_singular(left, a - 1.0, half, kQuadAbs, kQuadRel).value;

  // Right half in w = t1 - y.
  const double c = t2 - t1;
  if (c == 0.0) {
    const auto right = [=](double w) { return 2.0 * std::pow(t1 - w, a - 1.0); };
    total += integrate_power_singular(right, a - 2.0 * b, half, kQuadAbs, kQuadRel).value;
    return total;
  }
  const auto right_far = [=](double w) {
    return std::pow(c + w, a - b) * std::pow(t1 - w, a - 1.0);
  };
  const auto right_near = [=](double w) {
    return std::pow(c + w, -b) * std::pow(t1 - w, a - 1.0);
  };
  total += integrate_power_singular(right_far, -b, half, kQuadAbs, kQuadRel).value;
  total += integrate_power_singular(right_near, a - b, half, kQuadAbs, kQuadRel).value;
  return total;
}

}  // namespace

double ProcessPath::at(double u) const {
  if (!(u >= 0.0) || u > std::max(u_max, grid.back())) {
    throw std::domain_error("ProcessPath: query outside [0, u_max]");
  }
  const auto it = std::upper_bound(grid.begin(), grid.end(), u);
  if (it == grid.end()) return values.back();
  const std::size_t k = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double width = grid[k + 1] - grid[k];
  return values[k] + (values[k + 1] - values[k]) * (u - grid[k]) / width;
}

ProcessPath simulate_levy_path(double alpha, double u_max, double mesh, Stream& stream) {
  if (!(mesh > 0.0) || !(u_max > 0.0)) {
    throw std::invalid_argument("simulate_levy_path: mesh and u_max must be positive");
  }
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    throw std::invalid_argument("simulate_levy_path: alpha must lie in (1,2]");
  }
  const StableGenerator draw(StableSpec{alpha});
  const auto cells = static_cast<std::size_t>(std::floor(u_max / mesh + 1e-9));
  ProcessPath path;
  path.kind = PathKind::LevyMotion;
  path.alpha = alpha;
  path.mesh = mesh;
  path.u_max = u_max;
  path.grid.reserve(cells + 2);
  path.values.reserve(cells + 2);
  path.grid.push_back(0.0);
  path.values.push_back(0.0);
  const double step_scale = std::pow(mesh, 1.0 / alpha);
  double w = 0.0;
  for (std::size_t k = 1; k <= cells; ++k) {
    w += step_scale * draw(stream);
    path.grid.push_back(static_cast<double>(k) * mesh);
    path.values.push_back(w);
  }
  const double rest = u_max - path.grid.back();
  if (rest > 1e-9 * mesh) {
    w += std::pow(rest, 1.0 / alpha) * draw(stream);
    path.grid.push_back(u_max);
    path.values.push_back(w);
  }
  return path;
}

ProcessPath simulate_inverse_subordinator_path(double alpha, double u_max, double mesh,
                                               Stream& stream) {
  check_inverse_alpha(alpha, "simulate_inverse_subordinator_path");
  if (!(mesh > 0.0) || !(u_max > 0.0)) {
    throw std::invalid_argument(
        "simulate_inverse_subordinator_path: mesh and u_max must be positive");
  }
  ProcessPath path;
  path.kind = PathKind::InverseSubordinator;
  path.alpha = alpha;
  path.mesh = mesh;
  path.u_max = u_max;
  path.grid.push_back(0.0);
  path.values.push_back(0.0);
  const double step_scale = std::pow(special::gamma(1.0 - alpha) * mesh, 1.0 / alpha);
  double d = 0.0;
  std::size_t j = 0;
  while (d <= u_max) {
    d += step_scale * sample_positive_stable(alpha, stream);
    ++j;
    path.grid.push_back(d);
    path.values.push_back(static_cast<double>(j) * mesh);
  }
  return path;
}

double frac_integral(const ProcessPath& path, double beta, double u, double drop) {
  if (!(beta >= 0.0)) throw std::invalid_argument("frac_integral: beta must be >= 0");
  if (path.kind == PathKind::LevyMotion && !(beta < 1.0 / path.alpha)) {
    throw std::invalid_argument("frac_integral: Levy motion needs beta < 1/alpha");
  }
  if (path.kind == PathKind::InverseSubordinator && !(beta <= path.alpha)) {
    throw std::invalid_argument("frac_integral: inverse subordinator needs beta <= alpha");
  }
  if (!(u > 0.0) || u > path.u_max) throw std::domain_error("frac_integral: u outside (0, u_max]");
  if (!(drop >= 0.0) || drop >= u) throw std::invalid_argument("frac_integral: bad drop");
  const double end = u - drop;
  if (beta == 0.0) return path.at(end);

  const double q = 1.0 - beta;
  double sum = 0.0;
  double pa = std::pow(u, q);
  for (std::size_t k = 0; k + 1 < path.grid.size() && path.grid[k] < end; ++k) {
    const double a = path.grid[k];
    const double full_b = path.grid[k + 1];
    const double rise = path.values[k + 1] - path.values[k];
    if (full_b == a) {
      // Jump of W with no room in the grid: a point mass at a.
      sum += rise * std::pow(u - a, -beta) * q;
      continue;
    }
    const double b = std::min(full_b, end);
    const double mass = kernel_mass(u, a, b, q, pa);
    sum += rise / (full_b - a) * mass;
    pa -= mass;
  }
  return sum / q;
}

double marginal_sample_finite_mean(double alpha, double beta, double u, Stream& stream) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    throw std::invalid_argument("marginal_sample_finite_mean: alpha must lie in (1,2]");
  }
  if (!(beta >= 0.0) || !(alpha * beta < 1.0)) {
    throw std::invalid_argument("marginal_sample_finite_mean: need 0 <= beta < 1/alpha");
  }
  if (!(u > 0.0)) throw std::invalid_argument("marginal_sample_finite_mean: u must be positive");
  const double factor =
      std::pow(u, 1.0 / alpha - beta) * std::pow(1.0 - alpha * beta, -1.0 / alpha);
  return factor * sample_stable(StableSpec{alpha}, stream);
}

double moments_inverse_case(double alpha, double beta, double u, int k) {
  check_inverse_alpha(alpha, "moments");
  if (!(beta < 1.0)) throw std::invalid_argument("moments: beta must be < 1");
  if (k < 1) throw std::invalid_argument("moments: k must be >= 1");
  if (!(u > 0.0)) throw std::invalid_argument("moments: u must be positive");
  const double d = alpha - beta;
  double m = special::gamma(k + 1.0) / std::pow(special::gamma(1.0 - alpha), k);
  for (int j = 1; j <= k; ++j) {
    m *= checked_gamma(1.0 - beta + (j - 1) * d, "1-beta+(j-1)(alpha-beta)") /
         checked_gamma(j * d + 1.0, "j(alpha-beta)+1");
  }
  return m * std::pow(u, k * d);
}

double covariance_inverse_case(double alpha, double beta, double t1, double t2) {
  check_inverse_alpha(alpha, "covariance");
  if (!(beta < 1.0)) throw std::invalid_argument("covariance: beta must be < 1");
  if (!(t1 > 0.0) || !(t1 <= t2)) throw std::invalid_argument("covariance: need 0 < t1 <= t2");
  if (t1 == t2 && !(alpha - 2.0 * beta > -1.0)) {
    throw std::invalid_argument("covariance: second moment infinite for beta >= (1+alpha)/2");
  }
  const double g1a = special::gamma(1.0 - alpha);
  const double c = special::gamma(1.0 - beta) /
                   (special::gamma(alpha) * g1a * g1a * special::gamma(1.0 + alpha - beta));
  return c * covariance_integral(alpha, beta, t1, t2);
}

double stationary_covariance(double alpha, double s) {
  check_inverse_alpha(alpha, "stationary_covariance");
  // x = e^{-y} turns the integral into int_0^X x^{a-1} (1-x)^{-a} dx.
  const double x_end = std::exp(-std::abs(s));
  if (x_end == 0.0) return 0.0;
  const auto near_zero = [=](double x) { return std::pow(1.0 - x, -alpha); };
  const auto near_one = [=](double w) { return std::pow(1.0 - w, alpha - 1.0); };
  double total;
  if (x_end <= 0.5) {
    total = integrate_power_singular(near_zero, alpha - 1.0, x_end, 1e-13, 1e-12).value;
  } else {
    // Upper piece in w = 1 - x over [1 - X, 1/2].
    total = integrate_power_singular(near_zero, alpha - 1.0, 0.5, 1e-13, 1e-12).value +
            integrate_power_singular(near_one, -alpha, 0.5, 1e-13, 1e-12).value -
            integrate_power_singular(near_one, -alpha, 1.0 - x_end, 1e-13, 1e-12).value;
  }
  return total / (special::gamma(alpha) * special::gamma(1.0 - alpha));
}

IncrementGap increment_dependence_gap(double alpha, double beta, double t1, double t2,
                                      double t3) {
  if (!(t1 > 0.0 && t1 <= t2 && t2 <= t3)) {
    throw std::invalid_argument("increment_dependence_gap: need 0 < t1 <= t2 <= t3");
  }
  const auto m1 = [&](double t) { return moments_inverse_case(alpha, beta, t, 1); };
  const auto cov = [&](double s, double t) { return covariance_inverse_case(alpha, beta, s, t); };
  IncrementGap g;
  g.a = (m1(t2) - m1(t1)) * (m1(t3) - m1(t2));
  g.b = cov(t2, t3) - moments_inverse_case(alpha, beta, t2, 2) - cov(t1, t3) + cov(t1, t2);
  g.gap = g.b - g.a;
  return g;
}

TruncatedSample sample_X_star(const IncrementLaw& law, const ResponseFunction& h,
                              double truncation, Stream& stream) {
  if (!law.finite_mean()) throw InadmissibleError("X*: requires a finite mean");
  if (!h.integrable() || !h.directly_riemann_integrable()) {
    throw InadmissibleError("X*: response " + h.describe() +
                            " is not directly Riemann integrable");
  }
  if (!(truncation > 0.0)) throw std::invalid_argument("X*: truncation must be positive");
  RenewalWalker walker(law, truncation, DelayKind::Stationary, stream);
  double sum = 0.0;
  while (auto s = walker.next()) sum += h(*s);
  const double tail = std::max(0.0, h.total_integral() - h.integral(truncation));
  return {sum, tail / law.mean()};
}

double sample_X_star_centered(const IncrementLaw& law, const ResponseFunction& h,
                              double truncation, Stream& stream, bool unchecked) {
  if (!law.finite_mean()) throw InadmissibleError("X*_o: requires a finite mean");
  if (h.integrable()) {
    throw InadmissibleError("X*_o: response " + h.describe() + " is integrable, use X*");
  }
  if (!unchecked) {
    if (!law.finite_variance()) {
      throw InadmissibleError("X*_o: only the finite-variance case is checked");
    }
    if (!h.square_integrable()) {
      throw InadmissibleError("X*_o: response " + h.describe() + " is not square integrable");
    }
  }
  if (!(truncation > 0.0)) throw std::invalid_argument("X*_o: truncation must be positive");
  RenewalWalker walker(law, truncation, DelayKind::Stationary, stream);
  double sum = 0.0;
  while (auto s = walker.next()) sum += h(*s);
  return sum - h.integral(truncation) / law.mean();
}

}  // namespace rsn
