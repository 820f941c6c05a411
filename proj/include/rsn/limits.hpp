#pragma once

// Limit processes and their closed-form characteristics.
//
//   W_alpha         alpha-stable Levy motion (1 < alpha <= 2), or the inverse
//                   W(u) = inf{s : D(s) > u} of the alpha-stable subordinator
//                   D with -log E e^{-zD(1)} = Gamma(1-alpha) z^alpha.
//   Y_{alpha,beta}  int_0^u (u - y)^-beta dW(y).

#include <cstddef>
#include <vector>

#include "rsn/laws.hpp"
#include "rsn/rng.hpp"

namespace rsn {

enum class PathKind { LevyMotion, InverseSubordinator };

/// Values of W at increasing knots 0 = grid[0] < grid[1] < ..., with W(0) = 0.
/// W is taken linear between knots. Levy paths live on a uniform grid of step
/// `mesh`; inverse-subordinator knots are the points (D(j mesh), j mesh), so
/// the grid is random and the values are multiples of `mesh`.
struct ProcessPath {
  std::vector<double> grid;
  std::vector<double> values;
  PathKind kind = PathKind::LevyMotion;
  double alpha = 2.0;
  double mesh = 0.0;
  double u_max = 0.0;

  /// Linear interpolation; u must lie in [0, u_max].
  double at(double u) const;
};

ProcessPath simulate_levy_path(double alpha, double u_max, double mesh, Stream& stream);

/// Runs D on the time grid j*mesh until it first exceeds u_max. The last knot
/// lies beyond u_max.
ProcessPath simulate_inverse_subordinator_path(double alpha, double u_max, double mesh,
                                               Stream& stream);

/// Y_{alpha,beta}(u) for the piecewise-linear path: on a cell [a,b] with slope
/// s the kernel integrates exactly to s ((u-a)^{1-beta} - (u-b)^{1-beta}) / (1-beta).
/// Cells above u - drop are ignored (drop = 0 keeps everything). beta = 0
/// returns W(u).
double frac_integral(const ProcessPath& path, double beta, double u, double drop = 0.0);

/// Exact draw of Y_{alpha,beta}(u) = u^{1/alpha - beta} (1 - alpha beta)^{-1/alpha} W(1).
double marginal_sample_finite_mean(double alpha, double beta, double u, Stream& stream);

/// E Y_{alpha,beta}(u)^k for the inverse-subordinator case.
double moments_inverse_case(double alpha, double beta, double u, int k);

/// E Y(t1) Y(t2), 0 < t1 <= t2, by quadrature (absolute tolerance 1e-10).
double covariance_inverse_case(double alpha, double beta, double t1, double t2);

/// Covariance R(s) of the stationary process Y_{alpha,alpha}(e^u).
double stationary_covariance(double alpha, double s);

struct IncrementGap {
  double gap;  // b - a
  double a;    // product of the increment means
  double b;    // mixed moment of the two increments
};

/// E[(Y(t2)-Y(t1))(Y(t3)-Y(t2))] minus the product of the two increment means.
IncrementGap increment_dependence_gap(double alpha, double beta, double t1, double t2,
                                      double t3);

struct TruncatedSample {
  double value;
  /// mu^-1 int_T^inf |h|: bound on the mean truncation error.
  double tail_bound;
};

/// X* = sum_k h(S*_k) over a stationary renewal path cut at T.
TruncatedSample sample_X_star(const IncrementLaw& law, const ResponseFunction& h,
                              double truncation, Stream& stream);

/// X*_o(T) = sum_{S*_k <= T} h(S*_k) - mu^-1 int_0^T h. Requires finite
/// variance and square-integrable h unless `unchecked` is set.
double sample_X_star_centered(const IncrementLaw& law, const ResponseFunction& h,
                              double truncation, Stream& stream, bool unchecked = false);

}  // namespace rsn
