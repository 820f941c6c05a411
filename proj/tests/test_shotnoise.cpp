#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "rsn/errors.hpp"
#include "rsn/shotnoise.hpp"
#include "support.hpp"

using namespace rsn;

namespace {

RenewalPath fixed_path(std::vector<double> arrivals, double horizon,
                       DelayKind delay = DelayKind::ZeroDelayed) {
  RenewalPath p;
  p.arrivals = std::move(arrivals);
  p.horizon = horizon;
  p.delay = delay;
  return p;
}

LimitSpec spec_of(Regime r, double alpha, double beta, IncrementLaw law, ResponseFunction h) {
  LimitSpec s;
  s.regime = r;
  s.alpha = alpha;
  s.beta = beta;
  s.law = std::move(law);
  s.h = std::move(h);
  return s;
}

std::string inadmissible_message(const LimitSpec& s) {
  try {
    validate(s);
  } catch (const InadmissibleError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shot sums on fixed paths") {
  CHECK(evaluate(fixed_path({0, 1, 2}, 2), ResponseFunction::exp_decay(1.0), 2.0) ==
        doctest::Approx(1.5032147244080551).epsilon(1e-14));
  CHECK(evaluate(fixed_path({}, 2), ResponseFunction::exp_decay(1.0), 2.0) == 0.0);
  CHECK(evaluate(fixed_path({0, 1}, 2), ResponseFunction::power_decay(0.5, 1.0), 2.0) ==
        doctest::Approx(1.2844570503761732).epsilon(1e-14));
  CHECK(evaluate(fixed_path({0}, 1), ResponseFunction::power_decay(0.5, 1.0), 0.0) == 1.0);
}

TEST_CASE("centred shot sums") {
  const IncrementLaw law = IncrementLaw::exponential(1.0);
  CHECK(centered_statistic(fixed_path({0, 1}, 2), ResponseFunction::power_decay(0.5, 1.0), law,
                           2.0) == doctest::Approx(-0.1796445647615812).epsilon(1e-13));
  CHECK(centered_statistic(fixed_path({0}, 1), ResponseFunction::exp_decay(2.0), law, 0.0) == 1.0);

  // Deterministic lattice {0, mu, 2 mu, ...} with a constant response.
  const double mu = 1.7;
  const double v = 2.5;
  const IncrementLaw u = IncrementLaw::uniform(mu - 0.5, mu + 0.5);
  std::vector<double> grid;
  for (int k = 0; k * mu <= 100.0; ++k) grid.push_back(k * mu);
  for (double t : {0.5, 10.0, 33.3, 99.9}) {
    const double x = centered_statistic(fixed_path(grid, 100.0), ResponseFunction::constant(v), u, t);
    CHECK(x == doctest::Approx(v * (std::floor(t / mu) + 1.0 - t / mu)).epsilon(1e-12));
    CHECK(x <= v);
  }
}

TEST_CASE("evaluate is additive over disjoint arrival sets") {
  Stream s(1, StreamId{1, 0});
  const RenewalPath p =
      sample_path(IncrementLaw::exponential(1.0), 3e5, DelayKind::ZeroDelayed, s);
  REQUIRE(p.arrivals.size() > 100000);
  RenewalPath even = fixed_path({}, p.horizon);
  RenewalPath odd = fixed_path({}, p.horizon);
  for (std::size_t k = 0; k < p.arrivals.size(); ++k) {
    (k % 2 ? odd : even).arrivals.push_back(p.arrivals[k]);
  }
  const ResponseFunction h = ResponseFunction::power_decay(0.25, 1.0);
  const double whole = evaluate(p, h, 3e5);
  CHECK(evaluate(even, h, 3e5) + evaluate(odd, h, 3e5) == doctest::Approx(whole).epsilon(1e-12));
}

TEST_CASE("normalizing function g") {
  const auto h0 = ResponseFunction::constant(1.0);
  CHECK(scaling_g(spec_of(Regime::A1, 2, 0, IncrementLaw::exponential(1.0), h0), 100.0) ==
        doctest::Approx(10.0).epsilon(1e-14));
  CHECK(scaling_g(spec_of(Regime::D4, 0.5, 0, IncrementLaw::pareto(0.5, 1.0), h0), 16.0) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK(scaling_g(spec_of(Regime::A3, 1.5, 0, IncrementLaw::pareto(1.5, 1.0), h0), 1000.0) ==
        doctest::Approx(16.02499522563787).epsilon(1e-12));
}

TEST_CASE("solve_c") {
  CHECK(solve_c(IncrementLaw::pareto(1.5, 1.0), 1000.0) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(solve_c(IncrementLaw::pareto(0.5, 1.0), 10.0) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(solve_c(IncrementLaw::pareto(2.0, 1.0), std::exp(2.0) / 2.0) ==
        doctest::Approx(std::numbers::e).epsilon(1e-9));
  for (const IncrementLaw& law :
       {IncrementLaw::pareto(0.3, 2.0), IncrementLaw::pareto(1.2, 0.5), IncrementLaw::pareto(2.0, 1.0),
        IncrementLaw::pareto(2.0, 3.0), IncrementLaw::pareto(1.9, 1.0)}) {
    for (double t : {10.0, 1e3, 1e6}) {
      const double c = solve_c(law, t);
      const double a = law.tail_index();
      INFO(law.describe(), " t=", t);
      CHECK(std::abs(t * law.slow_varying_at(c) / std::pow(c, a) - 1.0) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(solve_c(IncrementLaw::exponential(1.0), 10.0), std::invalid_argument);
}

TEST_CASE("regime admissibility") {
  const auto exp1 = IncrementLaw::exponential(1.0);
  CHECK_NOTHROW(validate(spec_of(Regime::A1, 2, 0.25, exp1, ResponseFunction::power_decay(0.25, 1))));
  const std::string a3 = inadmissible_message(spec_of(
      Regime::A3, 1.5, 0.7, IncrementLaw::pareto(1.5, 1), ResponseFunction::power_decay(0.7, 1)));
  CHECK(a3.find("(0,1/α)") != std::string::npos);
  CHECK(a3.find("A3") == 0);
  CHECK(inadmissible_message(spec_of(Regime::A1, 2, 0.5, exp1,
                                     ResponseFunction::power_decay(0.5, 1)))
            .find("(0,1/2)") != std::string::npos);
  CHECK(inadmissible_message(spec_of(Regime::D4, 0.5, 0.7, IncrementLaw::pareto(0.5, 1),
                                     ResponseFunction::power_decay(0.7, 1)))
            .find("[0,α]") != std::string::npos);
  // D4 needs an infinite-mean Pareto law.
  CHECK_THROWS_AS(validate(spec_of(Regime::D4, 0.5, 0.25, exp1,
                                   ResponseFunction::power_decay(0.25, 1))),
                  InadmissibleError);
  // A1 needs a finite variance.
  CHECK_THROWS_AS(validate(spec_of(Regime::A1, 2, 0, IncrementLaw::pareto(1.5, 1),
                                   ResponseFunction::constant(1))),
                  InadmissibleError);
  // Scaled regimes reject Window responses.
  CHECK_THROWS_AS(validate(spec_of(Regime::A1, 2, 0, exp1, ResponseFunction::window(0, 1))),
                  InadmissibleError);
  // beta must be the response's index.
  CHECK_THROWS_AS(validate(spec_of(Regime::A1, 2, 0.1, exp1, ResponseFunction::power_decay(0.25, 1))),
                  InadmissibleError);
  CHECK_NOTHROW(validate(spec_of(Regime::NoScaleDri, 2, 0, exp1, ResponseFunction::window(0, 1))));
  CHECK_THROWS_AS(validate(spec_of(Regime::NoScaleDri, 2, 0, exp1,
                                   ResponseFunction::power_decay(0.5, 1))),
                  InadmissibleError);
  CHECK_NOTHROW(validate(spec_of(Regime::NoScaleCentered, 2, 0, exp1,
                                 ResponseFunction::power_decay(0.75, 1))));
  CHECK_THROWS_AS(validate(spec_of(Regime::NoScaleCentered, 2, 0, exp1,
                                   ResponseFunction::constant(1))),
                  InadmissibleError);
  LimitSpec heavy = spec_of(Regime::NoScaleCentered, 2, 0, IncrementLaw::pareto(1.5, 1),
                            ResponseFunction::power_decay(0.75, 1));
  CHECK_THROWS_AS(validate(heavy), InadmissibleError);
  heavy.unchecked_hypotheses = true;
  CHECK_NOTHROW(validate(heavy));
}

TEST_CASE("regime names round-trip") {
  for (Regime r : {Regime::NoScaleDri, Regime::NoScaleCentered, Regime::A1, Regime::A2,
                   Regime::A3, Regime::D4}) {
    CHECK(parse_regime(regime_name(r)) == r);
  }
  CHECK_THROWS_AS(parse_regime("B7"), std::invalid_argument);
}

TEST_CASE("hurst index") {
  CHECK(hurst_index(spec_of(Regime::A1, 2, 0.25, IncrementLaw::exponential(1),
                            ResponseFunction::power_decay(0.25, 1))) == 0.25);
  CHECK(hurst_index(spec_of(Regime::D4, 0.5, 0.25, IncrementLaw::pareto(0.5, 1),
                            ResponseFunction::power_decay(0.25, 1))) == 0.25);
}

TEST_CASE("scaled statistic special cases") {
  const IncrementLaw law = IncrementLaw::exponential(2.0);
  const double t = 50.0;

  SUBCASE("A1 with a constant response is the renewal CLT statistic") {
    Stream s(2, StreamId{1, 0});
    const RenewalPath p = sample_path(law, 2 * t, DelayKind::ZeroDelayed, s);
    const std::vector<double> u{0.5, 1.0, 2.0};
    const auto x = scaled_statistic(
        spec_of(Regime::A1, 2, 0, law, ResponseFunction::constant(1.0)), p, u, t);
    const double mu = law.mean();
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double n = static_cast<double>(count(p, u[j] * t));
      CHECK(x[j] == doctest::Approx((n - u[j] * t / mu) /
                                    std::sqrt(law.variance() * t / (mu * mu * mu))));
    }
  }

  SUBCASE("the constant's value cancels exactly") {
    Stream s(3, StreamId{1, 0});
    const RenewalPath p = sample_path(law, 2 * t, DelayKind::ZeroDelayed, s);
    const std::vector<double> u{0.5, 2.0};
    const auto one = scaled_statistic(
        spec_of(Regime::A1, 2, 0, law, ResponseFunction::constant(1.0)), p, u, t);
    const auto five = scaled_statistic(
        spec_of(Regime::A1, 2, 0, law, ResponseFunction::constant(5.0)), p, u, t);
    CHECK(one == five);
    const IncrementLaw pareto = IncrementLaw::pareto(1.5, 1.0);
    Stream s2(3, StreamId{2, 0});
    const RenewalPath q = sample_path(pareto, 2 * t, DelayKind::ZeroDelayed, s2);
    CHECK(scaled_statistic(spec_of(Regime::A3, 1.5, 0, pareto, ResponseFunction::constant(0.3)),
                           q, u, t) ==
          scaled_statistic(spec_of(Regime::A3, 1.5, 0, pareto, ResponseFunction::constant(7.0)),
                           q, u, t));
  }

  SUBCASE("zero-arrival path") {
    const RenewalPath empty = fixed_path({}, 2 * t, DelayKind::Stationary);
    const ResponseFunction h = ResponseFunction::power_decay(0.25, 1.0);
    const LimitSpec a1 = spec_of(Regime::A1, 2, 0.25, law, h);
    const std::vector<double> u{1.0, 2.0};
    const auto x = scaled_statistic(a1, empty, u, t);
    for (std::size_t j = 0; j < u.size(); ++j) {
      CHECK(x[j] == doctest::Approx(-(h.integral(u[j] * t) / law.mean()) /
                                    (scaling_g(a1, t) * h(t))));
    }
    const LimitSpec d4 = spec_of(Regime::D4, 0.5, 0.25, IncrementLaw::pareto(0.5, 1.0), h);
    for (double v : scaled_statistic(d4, empty, u, t)) CHECK(v == 0.0);
  }

  SUBCASE("D4 exact-match response divides by the multiplier") {
    const IncrementLaw pareto = IncrementLaw::pareto(0.5, 1.0);
    Stream s(4, StreamId{1, 0});
    const RenewalPath p = sample_path(pareto, t, DelayKind::ZeroDelayed, s);
    const double c = 3.0;
    const ResponseFunction h = ResponseFunction::pareto_tail_match(0.5, 1.0, c);
    const std::vector<double> u{1.0};
    const auto x = scaled_statistic(spec_of(Regime::D4, 0.5, 0.5, pareto, h), p, u, t);
    CHECK(x[0] == doctest::Approx(evaluate(p, h, t) / c));
  }
}

TEST_CASE("expected shot counts") {
  CHECK(expected_shots(IncrementLaw::exponential(2.0), 100.0) == doctest::Approx(200.0));
  const double t = 1e4;
  CHECK(expected_shots(IncrementLaw::pareto(0.5, 1.0), t) ==
        doctest::Approx(1.0 / (std::tgamma(0.5) * std::tgamma(1.5) / std::sqrt(t))));
}
