#include "rsn/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rsn/special.hpp"

namespace rsn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double int_power(double x, int k) {
  double r = x;
  for (int i = 1; i < k; ++i) r *= x;
  return r;
}

struct Sectioned {
  double mean;
  double std_error;
  bool finite;
};

// Batch b covers [b n / B, (b + 1) n / B).
template <class Value>
Sectioned sectioned_mean(std::size_t n, std::size_t batches, Value&& value) {
  if (batches < 2) throw std::invalid_argument("sectioning needs at least 2 batches");
  if (n < batches) throw std::invalid_argument("sectioning: fewer observations than batches");
  std::vector<double> means(batches);
  double total = 0.0;
  bool finite = true;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * n / batches;
    const std::size_t hi = (b + 1) * n / batches;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += value(i);
    finite = finite && std::isfinite(s);
    total += s;
    means[b] = s / static_cast<double>(hi - lo);
  }
  const double mean = total / static_cast<double>(n);
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  const double bsz = static_cast<double>(batches);
  return {mean, std::sqrt(ss / (bsz - 1.0) / bsz), finite};
}

MomentTest finish(double estimate, double reference, double std_error, bool finite,
                  std::size_t batches) {
  MomentTest r;
  r.estimate = estimate;
  r.std_error = std_error;
  r.finite = finite && std::isfinite(estimate);
  if (!r.finite) {
    r.z = kInf;
    r.p_value = 0.0;
    return r;
  }
  const double diff = estimate - reference;
  if (std_error > 0.0) {
    r.z = diff / std_error;
  } else {
    r.z = diff == 0.0 ? 0.0 : std::copysign(kInf, diff);
  }
  if (std::isinf(r.z)) {
    r.p_value = 0.0;
  } else {
    const boost::math::students_t dist(static_cast<double>(batches - 1));
    r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.z)));
  }
  return r;
}

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  for (double e : v) {
    if (std::isnan(e)) throw std::invalid_argument("KS: sample contains NaN");
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  const std::vector<double> a = sorted_copy(x);
  const std::vector<double> b = sorted_copy(y);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double lambda = std::sqrt(n * m / (n + m)) * d;
  return {d, special::kolmogorov_survival(lambda)};
}

KsResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  const std::vector<double> a = sorted_copy(x);
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, special::kolmogorov_survival(std::sqrt(n) * d)};
}

KsResult ks_one_sample_normal(std::span<const double> x, double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("ks_one_sample_normal: variance must be positive and finite");
  }
  const double sd = std::sqrt(variance);
  return ks_one_sample(x, [=](double v) { return special::normal_cdf((v - mean) / sd); });
}

ChiSquareResult chi_square_pmf(std::span<const double> x,
                               const std::function<double(int)>& pmf) {
  if (x.empty()) throw std::invalid_argument("chi_square_pmf: empty sample");
  int top = 0;
  for (double v : x) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e6) {
      throw std::invalid_argument("chi_square_pmf: observations must be small nonnegative integers");
    }
    top = std::max(top, static_cast<int>(v));
  }
  const double n = static_cast<double>(x.size());
  std::vector<double> observed(static_cast<std::size_t>(top) + 1, 0.0);
  for (double v : x) observed[static_cast<std::size_t>(v)] += 1.0;
  std::vector<double> expected(observed.size());
  double cumulative = 0.0;
  for (int k = 0; k < top; ++k) {
    expected[static_cast<std::size_t>(k)] = n * pmf(k);
    cumulative += pmf(k);
  }
  expected.back() = n * std::max(0.0, 1.0 - cumulative);

  std::vector<double> obs_cells;
  std::vector<double> exp_cells;
  double o = 0.0;
  double e = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    o += observed[k];
    e += expected[k];
    if (e >= 5.0) {
      obs_cells.push_back(o);
      exp_cells.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_cells.empty()) {
      obs_cells.push_back(o);
      exp_cells.push_back(e);
    } else {
      obs_cells.back() += o;
      exp_cells.back() += e;
    }
  }
  ChiSquareResult r;
  r.dof = static_cast<int>(obs_cells.size()) - 1;
  for (std::size_t c = 0; c < obs_cells.size(); ++c) {
    const double diff = obs_cells[c] - exp_cells[c];
    r.statistic += exp_cells[c] > 0.0 ? diff * diff / exp_cells[c] : (diff != 0.0 ? kInf : 0.0);
  }
  if (r.dof < 1) {
    r.p_value = 1.0;
  } else if (!std::isfinite(r.statistic)) {
    r.p_value = 0.0;
  } else {
    const boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  }
  return r;
}

MomentTest moment_test(std::span<const double> x, int k, double reference,
                       std::size_t batches) {
  if (k < 1) throw std::invalid_argument("moment_test: k must be >= 1");
  const Sectioned s = sectioned_mean(x.size(), batches, [&](std::size_t i) {
    return int_power(x[i], k);
  });
  return finish(s.mean, reference, s.std_error, s.finite, batches);
}

MomentTest moment_test_two_sample(std::span<const double> x, std::span<const double> y, int k,
                                  std::size_t batches) {
  if (k < 1) throw std::invalid_argument("moment_test: k must be >= 1");
  const Sectioned sx = sectioned_mean(x.size(), batches, [&](std::size_t i) {
    return int_power(x[i], k);
  });
  const Sectioned sy = sectioned_mean(y.size(), batches, [&](std::size_t i) {
    return int_power(y[i], k);
  });
  MomentTest r = finish(sx.mean, sy.mean, std::hypot(sx.std_error, sy.std_error),
                        sx.finite && sy.finite, batches);
  return r;
}

CorrelationTest correlation_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("correlation_test: need paired samples of size >= 3");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  CorrelationTest r;
  r.rho = (sxx > 0.0 && syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 0.0;
  r.z = r.rho * std::sqrt(n);
  r.p_value = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  return r;
}

MomentTest covariance_test(std::span<const double> x, std::span<const double> y,
                           double reference, std::size_t batches) {
  if (x.size() != y.size()) throw std::invalid_argument("covariance_test: unpaired samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  const Sectioned s = sectioned_mean(x.size(), batches, [&](std::size_t i) {
    return (x[i] - mx) * (y[i] - my);
  });
  return finish(s.mean, reference, s.std_error, s.finite, batches);
}

EnergyTest energy_distance_test(std::span<const Point2> x, std::span<const Point2> y,
                                std::size_t permutations, Stream& stream, Execution exec) {
  if (x.empty() || y.empty()) throw std::invalid_argument("energy_distance_test: empty sample");
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const std::size_t total = n + m;
  const std::size_t labelings = permutations + 1;

  std::vector<Point2> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());

  // in_x[j * labelings + p] = 1 when point j belongs to the first sample
  // under labeling p; labeling 0 is the observed one.
  std::vector<double> in_x(total * labelings, 0.0);
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t j = 0; j < n; ++j) in_x[j * labelings] = 1.0;
  for (std::size_t p = 1; p < labelings; ++p) {
    for (std::size_t i = total - 1; i > 0; --i) {
      const auto k = static_cast<std::size_t>(stream.uniform() * static_cast<double>(i + 1));
      std::swap(order[i], order[std::min(k, i)]);
    }
    for (std::size_t j = 0; j < n; ++j) in_x[order[j] * labelings + p] = 1.0;
  }

  // Full row sums r_i = sum_j |z_i - z_j|.
  constexpr std::size_t kBlock = 32;
  const std::size_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<double> rowsum(total, 0.0);
  for_each_replicate(total, exec, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      const double da = pooled[i].a - pooled[j].a;
      const double db = pooled[i].b - pooled[j].b;
      s += std::sqrt(da * da + db * db);
    }
    rowsum[i] = s;
  });

  // For each labeling, S_xx = 2 sum_{i<j} d_ij [i, j in first sample]. Rows
  // are processed in blocks so each label row is reused while in cache.
  std::vector<double> block_xx(blocks * labelings, 0.0);
  for_each_replicate(blocks, exec, [&](std::size_t blk) {
    const std::size_t lo = blk * kBlock;
    const std::size_t hi = std::min(total, lo + kBlock);
    const std::size_t rows = hi - lo;
    std::vector<double> acc(rows * labelings, 0.0);
    double dist[kBlock];
    for (std::size_t j = lo + 1; j < total; ++j) {
      const Point2 q = pooled[j];
      const std::size_t live = std::min(rows, j - lo);
      for (std::size_t r = 0; r < live; ++r) {
        const double da = pooled[lo + r].a - q.a;
        const double db = pooled[lo + r].b - q.b;
        dist[r] = std::sqrt(da * da + db * db);
      }
      const double* label = &in_x[j * labelings];
      for (std::size_t r = 0; r < live; ++r) {
        double* a = &acc[r * labelings];
        const double d = dist[r];
#pragma omp simd
        for (std::size_t p = 0; p < labelings; ++p) a[p] += d * label[p];
      }
    }
    double* xx = &block_xx[blk * labelings];
    for (std::size_t r = 0; r < rows; ++r) {
      const double* label = &in_x[(lo + r) * labelings];
      for (std::size_t p = 0; p < labelings; ++p) xx[p] += 2.0 * label[p] * acc[r * labelings + p];
    }
  });

  std::vector<double> sxx(labelings, 0.0);
  std::vector<double> xrows(labelings, 0.0);
  double all_rows = 0.0;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    for (std::size_t p = 0; p < labelings; ++p) sxx[p] += block_xx[blk * labelings + p];
  }
  for (std::size_t i = 0; i < total; ++i) {
    all_rows += rowsum[i];
    const double* label = &in_x[i * labelings];
    for (std::size_t p = 0; p < labelings; ++p) xrows[p] += label[p] * rowsum[i];
  }
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  std::vector<double> stat(labelings);
  for (std::size_t p = 0; p < labelings; ++p) {
    const double sxy = xrows[p] - sxx[p];
    const double syy = all_rows - 2.0 * sxy - sxx[p];
    stat[p] = 2.0 * sxy / (dn * dm) - sxx[p] / (dn * dn) - syy / (dm * dm);
  }
  EnergyTest r;
  r.statistic = stat[0] * dn * dm / (dn + dm);
  r.permutations = permutations;
  std::size_t exceed = 0;
  for (std::size_t p = 1; p < labelings; ++p) exceed += stat[p] >= stat[0];
  r.p_value = static_cast<double>(1 + exceed) / static_cast<double>(labelings);
  return r;
}

std::vector<double> sample_quantiles(std::vector<double> x, std::size_t count) {
  if (x.empty() || count == 0) return {};
  std::sort(x.begin(), x.end());
  std::vector<double> q(count);
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < count; ++i) {
    const double prob = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const auto k = std::min(x.size() - 1, static_cast<std::size_t>(prob * n));
    q[i] = x[k];
  }
  return q;
}

}  // namespace rsn
