#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsn/special.hpp"

using namespace rsn;

TEST_CASE("gamma matches the C library on (0,10]") {
  for (double x = 0.01; x <= 10.0; x += 0.037) {
    CHECK(special::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
  }
  CHECK(special::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(special::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("gamma reflection for negative arguments") {
  for (double x : {-0.5, -1.5, -2.25, -3.7}) {
    CHECK(special::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
  }
  CHECK(special::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)));
}

TEST_CASE("gamma poles are rejected") {
  for (double x : {0.0, -1.0, -2.0, -7.0}) {
    CHECK(special::is_gamma_pole(x));
    CHECK_THROWS_AS(special::gamma(x), std::domain_error);
  }
  CHECK_FALSE(special::is_gamma_pole(-0.5));
}

TEST_CASE("log gamma") {
  for (double x : {0.1, 1.0, 2.5, 30.0, 170.5}) {
    CHECK(special::log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("normal cdf") {
  CHECK(special::normal_cdf(0.0) == 0.5);
  CHECK(special::normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(special::normal_cdf(-8.0) == doctest::Approx(6.22096057427174e-16).epsilon(1e-10));
}

TEST_CASE("kolmogorov survival") {
  CHECK(special::kolmogorov_survival(0.0) == 1.0);
  CHECK(special::kolmogorov_survival(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(special::kolmogorov_survival(1.6276236115189504) == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(special::kolmogorov_survival(0.2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(special::kolmogorov_survival(5.0) < 1e-20);
}
