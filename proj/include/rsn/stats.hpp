#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rsn/parallel.hpp"
#include "rsn/rng.hpp"

namespace rsn {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov. Ties across samples are stepped over
/// together. p from the asymptotic Kolmogorov law at sqrt(nm/(n+m)) D.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// One-sample KS against a continuous CDF.
KsResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf);

KsResult ks_one_sample_normal(std::span<const double> x, double mean, double variance);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson chi-square of integer observations against a probability mass
/// function on {0, 1, ...}. Adjacent cells are merged until each expects at
/// least 5 observations; the upper tail is folded into the last cell.
ChiSquareResult chi_square_pmf(std::span<const double> x,
                               const std::function<double(int)>& pmf);

struct MomentTest {
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  bool finite = true;
};

/// Sectioned estimate of E x^k: the sample is split into `batches`
/// contiguous batches and the spread of the batch means gives the standard
/// error. p is two-sided from Student's t with batches-1 degrees of freedom.
MomentTest moment_test(std::span<const double> x, int k, double reference,
                       std::size_t batches = 20);

/// Sectioned two-sample comparison of the k-th moments of x and y.
MomentTest moment_test_two_sample(std::span<const double> x, std::span<const double> y, int k,
                                  std::size_t batches = 20);

struct CorrelationTest {
  double rho = 0.0;
  double z = 0.0;  // rho sqrt(n)
  double p_value = 1.0;
};

CorrelationTest correlation_test(std::span<const double> x, std::span<const double> y);

/// z-score of the empirical covariance of (x, y) against `reference`, with
/// a sectioned standard error.
MomentTest covariance_test(std::span<const double> x, std::span<const double> y,
                           double reference, std::size_t batches = 20);

struct Point2 {
  double a;
  double b;
};

struct EnergyTest {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t permutations = 0;
};

/// Two-sample energy-distance test in the plane with a label-permutation
/// null. p = (1 + #{E_perm >= E_obs}) / (1 + permutations).
EnergyTest energy_distance_test(std::span<const Point2> x, std::span<const Point2> y,
                                std::size_t permutations, Stream& stream,
                                Execution exec = Execution::Parallel);

/// Empirical quantiles at probabilities (i + 0.5) / count, i < count.
std::vector<double> sample_quantiles(std::vector<double> x, std::size_t count);

}  // namespace rsn
