#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsn/errors.hpp"
#include "rsn/limits.hpp"
#include "rsn/stable.hpp"
#include "rsn/stats.hpp"
#include "support.hpp"

using namespace rsn;

namespace {

ProcessPath identity_path(double u_max, std::size_t cells) {
  ProcessPath p;
  p.kind = PathKind::InverseSubordinator;
  p.alpha = 1.0;
  p.u_max = u_max;
  p.mesh = u_max / static_cast<double>(cells);
  for (std::size_t k = 0; k <= cells; ++k) {
    p.grid.push_back(static_cast<double>(k) * p.mesh);
    p.values.push_back(p.grid.back());
  }
  return p;
}

ProcessPath coarsen(const ProcessPath& p) {
  ProcessPath q = p;
  q.grid.clear();
  q.values.clear();
  for (std::size_t k = 0; k < p.grid.size(); k += 2) {
    q.grid.push_back(p.grid[k]);
    q.values.push_back(p.values[k]);
  }
  if (q.grid.back() != p.grid.back()) {
    q.grid.push_back(p.grid.back());
    q.values.push_back(p.values.back());
  }
  q.mesh = 2 * p.mesh;
  return q;
}

template <class F>
std::vector<double> over_paths(std::size_t n, std::uint32_t tag, F&& f) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Stream s(77, StreamId{tag, i});
    out[i] = f(s);
  }
  return out;
}

}  // namespace

TEST_CASE("levy path layout") {
  Stream s(1, StreamId{1, 0});
  const ProcessPath p = simulate_levy_path(2.0, 1.0, 0x1.0p-10, s);
  CHECK(p.grid.size() == 1025);
  CHECK(p.values.front() == 0.0);
  CHECK(p.grid.back() == 1.0);
  CHECK_THROWS_AS(simulate_levy_path(0.8, 1.0, 0.01, s), std::invalid_argument);
}

TEST_CASE("brownian marginal") {
  const auto w = over_paths(100000, 1, [](Stream& s) {
    return simulate_levy_path(2.0, 1.0, 1.0 / 32, s).at(1.0);
  });
  CHECK(ks_one_sample_normal(w, 0.0, 1.0).p_value > 0.01);
}

TEST_CASE("levy motion self-similarity") {
  const double a = 1.5;
  const auto w1 = over_paths(20000, 2, [&](Stream& s) {
    return simulate_levy_path(a, 1.0, 1.0 / 16, s).at(1.0);
  });
  const auto w4 = over_paths(20000, 3, [&](Stream& s) {
    return simulate_levy_path(a, 4.0, 1.0 / 16, s).at(4.0) / std::pow(4.0, 1.0 / a);
  });
  CHECK(ks_two_sample(w1, w4).p_value > 0.01);
}

TEST_CASE("inverse subordinator paths") {
  const double alpha = 0.5;
  const double mesh = 1e-3;
  SUBCASE("monotone, starting at zero, covering u_max") {
    for (std::uint64_t i = 0; i < 20; ++i) {
      Stream s(2, StreamId{1, i});
      const ProcessPath p = simulate_inverse_subordinator_path(alpha, 2.0, mesh, s);
      CHECK(p.values.front() == 0.0);
      CHECK(p.grid.front() == 0.0);
      CHECK(p.grid.back() > 2.0);
      for (std::size_t k = 1; k < p.grid.size(); ++k) {
        REQUIRE(p.grid[k] >= p.grid[k - 1]);
        REQUIRE(p.values[k] > p.values[k - 1]);
      }
      double last = 0.0;
      for (double u = 0.0; u <= 2.0; u += 0.01) {
        const double w = p.at(u);
        CHECK(w >= last);
        last = w;
      }
    }
  }
  SUBCASE("mean of W(1)") {
    const auto w = over_paths(20000, 4, [&](Stream& s) {
      return simulate_inverse_subordinator_path(alpha, 1.0, mesh, s).at(1.0);
    });
    const double target = 2.0 / std::numbers::pi;
    const double se = std::sqrt(testing::variance(w) / static_cast<double>(w.size()));
    CHECK(std::abs(testing::mean(w) - target) < 3.0 * se + mesh);
  }
  SUBCASE("E W(u) grows like u^alpha") {
    const std::vector<double> us{0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> sums(us.size(), 0.0);
    const std::size_t n = 4000;
    for (std::size_t i = 0; i < n; ++i) {
      Stream s(3, StreamId{5, i});
      const ProcessPath p = simulate_inverse_subordinator_path(alpha, 4.0, 1e-4, s);
      for (std::size_t j = 0; j < us.size(); ++j) sums[j] += p.at(us[j]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < us.size(); ++j) {
      const double x = std::log(us[j]);
      const double y = std::log(sums[j] / n);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(us.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope == doctest::Approx(alpha).epsilon(0.04));
  }
}

TEST_CASE("fractional integral on deterministic paths") {
  const ProcessPath id = identity_path(1.0, 64);
  CHECK(frac_integral(id, 0.5, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(frac_integral(id, 0.25, 1.0) == doctest::Approx(1.0 / 0.75).epsilon(1e-13));
  CHECK(frac_integral(id, 0.5, 0.37) == doctest::Approx(2.0 * std::sqrt(0.37)).epsilon(1e-13));
  Stream s(4, StreamId{1, 0});
  const ProcessPath bm = simulate_levy_path(2.0, 2.0, 1.0 / 128, s);
  for (double u : {0.3, 1.0, 1.77, 2.0}) CHECK(frac_integral(bm, 0.0, u) == bm.at(u));
}

TEST_CASE("fractional integral of brownian motion is N(0, u^{1-2beta}/(1-2beta))") {
  const auto y = over_paths(10000, 6, [](Stream& s) {
    return frac_integral(simulate_levy_path(2.0, 1.0, 1.0 / 256, s), 0.25, 1.0);
  });
  CHECK(ks_one_sample_normal(y, 0.0, 2.0).p_value > 0.01);
}

TEST_CASE("mesh refinement moves the second moment by less than its standard error") {
  std::vector<double> fine(10000);
  std::vector<double> coarse(10000);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    Stream s(5, StreamId{7, i});
    const ProcessPath p = simulate_levy_path(2.0, 1.0, 0x1.0p-10, s);
    fine[i] = std::pow(frac_integral(p, 0.25, 1.0), 2);
    coarse[i] = std::pow(frac_integral(coarsen(p), 0.25, 1.0), 2);
  }
  const double se = std::sqrt(testing::variance(fine) / static_cast<double>(fine.size()));
  CHECK(std::abs(testing::mean(fine) - testing::mean(coarse)) < se);
}

TEST_CASE("stable fractional integral matches the exact marginal") {
  const double alpha = 1.5;
  const double beta = 0.25;
  const auto y = over_paths(10000, 8, [&](Stream& s) {
    return frac_integral(simulate_levy_path(alpha, 1.0, 0x1.0p-10, s), beta, 1.0);
  });
  const auto exact = over_paths(10000, 9, [&](Stream& s) {
    return marginal_sample_finite_mean(alpha, beta, 1.0, s);
  });
  CHECK(ks_two_sample(y, exact).p_value > 0.01);
}

TEST_CASE("exact finite-mean marginal") {
  for (double a : {1.5, 2.0}) {
    Stream s1(6, StreamId{1, 0});
    Stream s2(6, StreamId{1, 0});
    CHECK(marginal_sample_finite_mean(a, 0.0, 1.0, s1) == sample_stable(StableSpec{a}, s2));
  }
  const auto y = over_paths(100000, 10, [](Stream& s) {
    return marginal_sample_finite_mean(2.0, 0.25, 1.0, s);
  });
  CHECK(ks_one_sample_normal(y, 0.0, 2.0).p_value > 0.01);
  const double a = 1.5;
  const double b = 0.25;
  const auto at1 = over_paths(50000, 11, [&](Stream& s) {
    return marginal_sample_finite_mean(a, b, 1.0, s);
  });
  const auto at2 = over_paths(50000, 12, [&](Stream& s) {
    return marginal_sample_finite_mean(a, b, 2.0, s) / std::pow(2.0, 1.0 / a - b);
  });
  CHECK(ks_two_sample(at1, at2).p_value > 0.01);
}

TEST_CASE("self-similarity of fractional integrals over simulated paths") {
  SUBCASE("brownian") {
    const auto y1 = over_paths(10000, 13, [](Stream& s) {
      return frac_integral(simulate_levy_path(2.0, 1.0, 1.0 / 256, s), 0.25, 1.0);
    });
    const auto y2 = over_paths(10000, 14, [](Stream& s) {
      return frac_integral(simulate_levy_path(2.0, 2.0, 1.0 / 256, s), 0.25, 2.0) /
             std::pow(2.0, 0.25);
    });
    CHECK(ks_two_sample(y1, y2).p_value > 0.01);
  }
  SUBCASE("inverse subordinator") {
    const auto y1 = over_paths(10000, 15, [](Stream& s) {
      return frac_integral(simulate_inverse_subordinator_path(0.5, 1.0, 1e-3, s), 0.25, 1.0);
    });
    const auto y2 = over_paths(10000, 16, [](Stream& s) {
      return frac_integral(simulate_inverse_subordinator_path(0.5, 2.0, 1e-3, s), 0.25, 2.0) /
             std::pow(2.0, 0.25);
    });
    CHECK(ks_two_sample(y1, y2).p_value > 0.01);
  }
}

TEST_CASE("inverse-case moments") {
  CHECK(moments_inverse_case(0.5, 0.0, 1.0, 1) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(moments_inverse_case(0.5, 0.25, 1.0, 1) == doctest::Approx(0.7627597635018132).epsilon(1e-13));
  CHECK(moments_inverse_case(0.5, 0.25, 1.0, 2) == doctest::Approx(0.971175894023349).epsilon(1e-13));
  CHECK(moments_inverse_case(0.5, 0.25, 4.0, 1) ==
        doctest::Approx(0.7627597635018132 * std::sqrt(2.0)).epsilon(1e-13));
  for (double a : {0.1, 0.5, 0.9}) {
    double factorial = 1.0;
    for (int k = 1; k <= 6; ++k) {
      factorial *= k;
      CHECK(moments_inverse_case(a, a, 1.0, k) == doctest::Approx(factorial).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(moments_inverse_case(0.5, 0.75, 1.0, 2), std::domain_error);
}

TEST_CASE("inverse-case moments against Monte Carlo") {
  for (double beta : {0.0, 0.25}) {
    const auto y = over_paths(10000, 17 + static_cast<std::uint32_t>(beta * 4), [&](Stream& s) {
      return frac_integral(simulate_inverse_subordinator_path(0.5, 1.0, 1e-3, s), beta, 1.0);
    });
    for (int k = 1; k <= 4; ++k) {
      const MomentTest m = moment_test(y, k, moments_inverse_case(0.5, beta, 1.0, k));
      INFO("beta=", beta, " k=", k, " estimate=", m.estimate);
      CHECK(std::abs(m.z) < 3.0);
    }
  }
}

TEST_CASE("covariance of Y") {
  CHECK(covariance_inverse_case(0.5, 0.25, 1.0, 1.0) == doctest::Approx(0.971175894023349).epsilon(1e-9));
  CHECK(covariance_inverse_case(0.5, 0.25, 1.0, 2.0) == doctest::Approx(1.0241798623881173).epsilon(1e-9));
  CHECK(covariance_inverse_case(0.5, 0.0, 1.0, 2.0) == doctest::Approx(0.8392621396522569).epsilon(1e-9));
  CHECK(covariance_inverse_case(0.5, 0.5, 1.0, 2.0) == doctest::Approx(1.5).epsilon(1e-9));
  for (double a : {0.2, 0.5, 0.8}) {
    CHECK(covariance_inverse_case(a, a, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
  }
  Stream s(8, StreamId{1, 0});
  for (int i = 0; i < 10; ++i) {
    const double a = 0.05 + 0.9 * s.uniform();
    const double b = a * s.uniform();
    const double t = 0.5 + 2.0 * s.uniform();
    INFO("alpha=", a, " beta=", b, " t=", t);
    CHECK(std::abs(covariance_inverse_case(a, b, t, t) - moments_inverse_case(a, b, t, 2)) < 1e-6);
  }
}

TEST_CASE("covariance of the inverse subordinator against simulation") {
  std::vector<double> prod(10000);
  for (std::size_t i = 0; i < prod.size(); ++i) {
    Stream s(9, StreamId{21, i});
    const ProcessPath p = simulate_inverse_subordinator_path(0.5, 2.0, 1e-3, s);
    prod[i] = p.at(1.0) * p.at(2.0);
  }
  CHECK(std::abs(testing::mean_z(prod, covariance_inverse_case(0.5, 0.0, 1.0, 2.0))) < 3.0);
}

TEST_CASE("stationary covariance R") {
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(std::abs(stationary_covariance(a, 0.0) - 1.0) < 1e-10);
  }
  CHECK(stationary_covariance(0.5, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(stationary_covariance(0.3, 1.0) == doctest::Approx(0.6548645977448834).epsilon(1e-10));
  CHECK(stationary_covariance(0.3, -1.0) == stationary_covariance(0.3, 1.0));
  CHECK(stationary_covariance(0.5, 60.0) < 1e-12);
  double last = 1.0;
  for (double s = 0.1; s < 8.0; s += 0.1) {
    const double r = stationary_covariance(0.6, s);
    CHECK(r <= last);
    last = r;
  }
}

TEST_CASE("log-time stationarity of Y_{alpha,alpha}") {
  const double alpha = 0.5;
  const std::size_t n = 10000;
  std::vector<double> y1(n), y2(n), y4(n);
  for (std::size_t i = 0; i < n; ++i) {
    Stream s(10, StreamId{22, i});
    const ProcessPath p = simulate_inverse_subordinator_path(alpha, 4.0, 1e-3, s);
    y1[i] = frac_integral(p, alpha, 1.0);
    y2[i] = frac_integral(p, alpha, 2.0);
    y4[i] = frac_integral(p, alpha, 4.0);
  }
  const double r = stationary_covariance(alpha, std::log(2.0));
  const MomentTest early = covariance_test(y1, y2, r);
  const MomentTest late = covariance_test(y2, y4, r);
  CHECK(std::abs(early.z) < 3.0);
  CHECK(std::abs(late.z) < 3.0);
  CHECK(std::abs(early.estimate - late.estimate) <
        3.0 * std::hypot(early.std_error, late.std_error));
}

TEST_CASE("increments of Y are dependent") {
  const IncrementGap g = increment_dependence_gap(0.5, 0.25, 1.0, 2.0, 3.0);
  CHECK(g.gap == doctest::Approx(-0.020006054149547425).epsilon(1e-8));
  CHECK(g.a == doctest::Approx(0.013965655844532539).epsilon(1e-8));
  CHECK(g.b == doctest::Approx(-0.006040398305014887).epsilon(1e-8));
  CHECK(std::abs(g.gap) > 1e-3);
  CHECK(increment_dependence_gap(0.5, 0.0, 1.0, 2.0, 3.0).gap ==
        doctest::Approx(0.037571801028258633).epsilon(1e-8));
  const IncrementGap degenerate = increment_dependence_gap(0.5, 0.25, 1.0, 1.0 + 1e-9, 3.0);
  CHECK(std::abs(degenerate.a) < 1e-6);
  CHECK(std::abs(degenerate.b) < 1e-6);
}

TEST_CASE("stationary shot-noise limit X*") {
  const IncrementLaw exp1 = IncrementLaw::exponential(1.0);
  SUBCASE("window response gives stationary poisson counts") {
    const auto x = over_paths(20000, 23, [&](Stream& s) {
      return sample_X_star(exp1, ResponseFunction::window(1.0, 3.5), 10.0, s).value;
    });
    const ChiSquareResult chi = chi_square_pmf(x, [](int k) {
      return std::exp(k * std::log(2.5) - 2.5 - std::lgamma(k + 1.0));
    });
    CHECK(chi.p_value > 0.01);
  }
  SUBCASE("mean is the integral of h over mu") {
    const auto x = over_paths(20000, 24, [&](Stream& s) {
      return sample_X_star(exp1, ResponseFunction::exp_decay(1.0), 50.0, s).value;
    });
    CHECK(std::abs(testing::mean_z(x, 1.0)) < 3.0);
    Stream s(1, StreamId{1, 0});
    CHECK(sample_X_star(exp1, ResponseFunction::exp_decay(1.0), 50.0, s).tail_bound ==
          doctest::Approx(std::exp(-50.0)));
  }
  SUBCASE("zero response") {
    Stream s(1, StreamId{1, 0});
    CHECK(sample_X_star(exp1, ResponseFunction::constant(0.0), 10.0, s).value == 0.0);
  }
  SUBCASE("requirements") {
    Stream s(1, StreamId{1, 0});
    CHECK_THROWS_AS(sample_X_star(exp1, ResponseFunction::power_decay(0.5, 1.0), 10.0, s),
                    InadmissibleError);
    CHECK_THROWS_AS(sample_X_star(IncrementLaw::pareto(0.5, 1.0), ResponseFunction::exp_decay(1.0),
                                  10.0, s),
                    InadmissibleError);
  }
}

TEST_CASE("centred limit X*_o") {
  const IncrementLaw exp1 = IncrementLaw::exponential(1.0);
  const ResponseFunction h = ResponseFunction::power_decay(0.75, 1.0);
  const std::size_t n = 5000;
  std::vector<double> short_t(n), long_t(n);
  for (std::size_t i = 0; i < n; ++i) {
    Stream a(11, StreamId{25, i});
    short_t[i] = sample_X_star_centered(exp1, h, 1e3, a);
    Stream b(11, StreamId{25, i});
    long_t[i] = sample_X_star_centered(exp1, h, 1e4, b);
  }
  CHECK(std::abs(testing::mean_z(short_t, 0.0)) < 4.0);
  CHECK(std::abs(testing::mean_z(long_t, 0.0)) < 4.0);
  CHECK(testing::variance(short_t) == doctest::Approx(testing::variance(long_t)).epsilon(0.05));
  Stream s(1, StreamId{1, 0});
  CHECK_THROWS_AS(sample_X_star_centered(exp1, ResponseFunction::constant(1.0), 10.0, s),
                  InadmissibleError);
  CHECK_THROWS_AS(sample_X_star_centered(IncrementLaw::pareto(1.5, 1.0), h, 10.0, s),
                  InadmissibleError);
  CHECK_NOTHROW(sample_X_star_centered(IncrementLaw::pareto(1.5, 1.0), h, 10.0, s, true));
}
