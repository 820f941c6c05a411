#include <doctest.h>

#include "rsn/errors.hpp"
#include "rsn/kernels.hpp"
#include "support.hpp"

using namespace rsn;

namespace {

ScaledRequest request(Regime regime, IncrementLaw law, ResponseFunction h, double alpha,
                      double beta, std::vector<double> u, double t, std::size_t n) {
  ScaledRequest r;
  r.spec.regime = regime;
  r.spec.alpha = alpha;
  r.spec.beta = beta;
  r.spec.law = std::move(law);
  r.spec.h = std::move(h);
  r.u = std::move(u);
  r.t = t;
  r.replicates = n;
  r.seed = 2024;
  return r;
}

std::vector<ScaledRequest> requests() {
  return {
      request(Regime::A1, IncrementLaw::exponential(1), ResponseFunction::power_decay(0.25, 1), 2,
              0.25, {0.5, 1, 2}, 500, 300),
      request(Regime::A3, IncrementLaw::pareto(1.5, 1), ResponseFunction::power_decay(0.25, 1),
              1.5, 0.25, {1}, 1000, 300),
      request(Regime::D4, IncrementLaw::pareto(0.5, 1), ResponseFunction::pareto_tail_match(0.5, 1, 1),
              0.5, 0.5, {1, 2}, 1000, 300),
      request(Regime::NoScaleDri, IncrementLaw::uniform(0, 1), ResponseFunction::window(0, 2), 2, 0,
              {1, 2}, 100, 300),
  };
}

}  // namespace

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
  for (const ScaledRequest& r : requests()) {
    const SampleMatrix serial = simulate_scaled_serial(r);
    const SampleMatrix parallel = simulate_scaled(r, Execution::Parallel);
    INFO(regime_name(r.spec.regime));
    CHECK(serial.values == parallel.values);
    CHECK(serial.u == parallel.u);
    CHECK(serial.replicates == r.replicates);
    CHECK(serial.values.size() == r.replicates * r.u.size());
  }
}

TEST_CASE("results do not depend on the worker count") {
  const ScaledRequest r = requests()[0];
  const int saved = worker_count();
  set_worker_count(1);
  const SampleMatrix one = simulate_scaled(r);
  set_worker_count(4);
  const SampleMatrix four = simulate_scaled(r);
  set_worker_count(saved);
  CHECK(one.values == four.values);
}

TEST_CASE("replicate i uses stream i") {
  ScaledRequest r = requests()[0];
  const SampleMatrix all = simulate_scaled(r);
  Stream s(r.seed, StreamId{r.tag, 7});
  const RenewalPath p = sample_path(r.spec.law, 2 * r.t, r.delay, s);
  const auto row = scaled_statistic(r.spec, p, r.u, r.t);
  for (std::size_t j = 0; j < r.u.size(); ++j) CHECK(all.at(7, j) == row[j]);
  CHECK(all.column(1).size() == r.replicates);
}

TEST_CASE("resource cap") {
  ScaledRequest r = requests()[0];
  r.max_shots = 1000;
  CHECK(expected_total_shots(r) == doctest::Approx(300 * 1000.0));
  CHECK_THROWS_AS(simulate_scaled(r), ResourceCapError);
}

TEST_CASE("exceptions from replicates propagate") {
  int calls = 0;
  const auto body = [&](std::size_t i) {
#pragma omp atomic
    ++calls;
    if (i == 42) throw std::runtime_error("boom");
  };
  CHECK_THROWS_AS(for_each_replicate(100, Execution::Parallel, body), std::runtime_error);
  CHECK(calls >= 1);
}
