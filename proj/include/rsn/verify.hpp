#pragma once

// Scenario runner: simulate scaled statistics over a ladder of horizons and
// compare them with the limit laws.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsn/kernels.hpp"
#include "rsn/parallel.hpp"
#include "rsn/shotnoise.hpp"

namespace rsn {

enum class TestKind {
  KsMarginal,
  Moments,
  JointPairwise,
  TimeReversal,
  SelfSimilarity,
  StationarityLogtime,
  MeanAbsN,
};

struct TestPlan {
  TestKind kind = TestKind::KsMarginal;
  int k_max = 0;  // Moments only
};

/// Config spelling: ks_marginal, moments:K, joint_pairwise, time_reversal,
/// self_similarity, stationarity_logtime, mean_abs_n.
std::string test_name(const TestPlan& plan);
TestPlan parse_test(std::string_view text);

struct Scenario {
  LimitSpec spec;
  std::vector<double> u{1.0};
  std::vector<double> t_ladder{100.0, 1000.0, 10000.0};
  std::size_t replicates = 1000;
  std::uint64_t seed = 1;
  std::vector<TestPlan> plan{TestPlan{}};
  DelayKind delay = DelayKind::ZeroDelayed;
  double significance = 0.01;
  double z_threshold = 3.0;
  double mean_abs_tolerance = 0.05;
  double max_shots = 1e8;
  /// Size of simulated reference samples; 0 means `replicates`.
  std::size_t reference_replicates = 0;
  /// Mesh of simulated limit paths; 0 picks 2^-10 (Levy) or 1e-3 (inverse
  /// subordinator).
  double reference_mesh = 0.0;
  /// Truncation T of the no-scaling references; 0 means u t.
  double truncation = 0.0;
  /// Added to every reference sample and reference value.
  double reference_shift = 0.0;
  /// Rows used by the 2-D energy test, and its permutation count.
  std::size_t energy_sample = 5000;
  std::size_t permutations = 199;
};

/// Throws ConfigError for malformed scenarios, InadmissibleError for test
/// plans the regime does not support and ResourceCapError when the expected
/// shot count exceeds max_shots.
void validate(const Scenario& scenario, std::size_t min_replicates = 100);

struct TestRecord {
  std::string test;
  double t = 0.0;
  std::string u;
  double statistic = 0.0;
  double reference = 0.0;
  std::optional<double> p_value;
  std::optional<double> z_score;
  bool pass = false;
  std::string detail;
};

struct QuantileSeries {
  double t = 0.0;
  double u = 0.0;
  std::vector<double> probability;
  std::vector<double> sample;
  std::vector<double> reference;
};

struct TestReport {
  std::uint64_t seed = 0;
  std::vector<TestRecord> records;
  std::vector<QuantileSeries> quantiles;

  bool all_pass() const;
};

TestReport run_scenario(const Scenario& scenario, Execution exec = Execution::Parallel);

/// Scaled-statistic samples at one rung of the ladder, as run_scenario draws them.
SampleMatrix scenario_samples(const Scenario& scenario, std::size_t t_index,
                              Execution exec = Execution::Parallel);

/// n draws of the limit law of the scaled statistic at u (simulated where no
/// closed form is used), shift included.
std::vector<double> reference_marginal(const Scenario& scenario, double u, double t,
                                       std::size_t n, std::uint32_t tag,
                                       Execution exec = Execution::Parallel);

/// Joint draws of the limit process at the u-grid from simulated paths
/// (scaled regimes only).
SampleMatrix reference_joint(const Scenario& scenario, std::size_t n, std::uint32_t tag,
                             Execution exec = Execution::Parallel);

/// Stream tag for (purpose, ladder rung, grid column).
constexpr std::uint32_t scenario_tag(std::uint32_t purpose, std::size_t t_index,
                                     std::size_t u_index) {
  return (purpose << 8) | static_cast<std::uint32_t>(t_index << 4) |
         static_cast<std::uint32_t>(u_index);
}

void write_report_json(std::ostream& out, const TestReport& report, const std::string& echo);
void write_report_csv(std::ostream& out, const TestReport& report);
void write_quantiles_csv(std::ostream& out, const TestReport& report);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace rsn
