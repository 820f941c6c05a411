#include "rsn/verify.hpp"

#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rsn/errors.hpp"
#include "rsn/limits.hpp"
#include "rsn/special.hpp"
#include "rsn/stable.hpp"
#include "rsn/stats.hpp"

namespace rsn {
namespace {

constexpr std::size_t kMaxGrid = 16;
constexpr std::size_t kQuantiles = 99;
constexpr std::uint32_t kJointColumn = 15;

bool scaled(Regime r) { return r != Regime::NoScaleDri && r != Regime::NoScaleCentered; }

bool exponential_limit(const LimitSpec& spec) {
  return spec.regime == Regime::D4 && spec.alpha == spec.beta;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double normal_moment(double variance, int k) {
  if (k % 2 == 1) return 0.0;
  double m = 1.0;
  for (int j = k - 1; j > 1; j -= 2) m *= j;
  return m * std::pow(variance, k / 2.0);
}

double limit_variance(const LimitSpec& spec, double u) {
  return std::pow(u, 1.0 - 2.0 * spec.beta) / (1.0 - 2.0 * spec.beta);
}

double reference_mesh(const Scenario& s) {
  if (s.reference_mesh > 0.0) return s.reference_mesh;
  return s.spec.regime == Regime::D4 ? 1e-3 : 0x1.0p-10;
}

std::size_t reference_size(const Scenario& s) {
  return s.reference_replicates > 0 ? s.reference_replicates : s.replicates;
}

[[noreturn]] void bad_config(const std::string& what) { throw ConfigError(what); }

double total_expected_shots(const Scenario& s) {
  bool recount = false;
  for (const TestPlan& p : s.plan) recount = recount || p.kind == TestKind::MeanAbsN;
  const double umax = *std::max_element(s.u.begin(), s.u.end());
  double shots = 0.0;
  for (double t : s.t_ladder) {
    shots += expected_shots(s.spec.law, umax * t) * static_cast<double>(s.replicates) *
             (recount ? 2.0 : 1.0);
  }
  return shots;
}

KsResult ks_against_exact(const Scenario& s, double u, std::span<const double> x) {
  const double shift = s.reference_shift;
  if (exponential_limit(s.spec)) {
    return ks_one_sample(x, [=](double v) { return v > shift ? -std::expm1(-(v - shift)) : 0.0; });
  }
  return ks_one_sample_normal(x, shift, limit_variance(s.spec, u));
}

bool has_exact_marginal(const LimitSpec& spec) {
  return spec.regime == Regime::A1 || spec.regime == Regime::A2 || exponential_limit(spec);
}

std::vector<double> exact_quantiles(const Scenario& s, double u,
                                    const std::vector<double>& probs) {
  std::vector<double> q;
  if (exponential_limit(s.spec)) {
    for (double p : probs) q.push_back(s.reference_shift - std::log1p(-p));
  } else {
    const boost::math::normal dist(s.reference_shift, std::sqrt(limit_variance(s.spec, u)));
    for (double p : probs) q.push_back(boost::math::quantile(dist, p));
  }
  return q;
}

class Runner {
 public:
  Runner(const Scenario& s, Execution exec) : s_(s), exec_(exec) {}

  TestReport run() {
    TestReport report;
    report.seed = s_.seed;
    for (std::size_t ti = 0; ti < s_.t_ladder.size(); ++ti) {
      const SampleMatrix sim = scenario_samples(s_, ti, exec_);
      references_.clear();
      for (const TestPlan& plan : s_.plan) {
        switch (plan.kind) {
          case TestKind::KsMarginal: ks_marginal(report, ti, sim); break;
          case TestKind::Moments: moments(report, ti, sim, plan.k_max); break;
          case TestKind::JointPairwise: joint(report, ti, sim); break;
          case TestKind::TimeReversal: time_reversal(report, ti); break;
          case TestKind::SelfSimilarity: self_similarity(report, ti, sim); break;
          case TestKind::StationarityLogtime: stationarity(report, ti, sim); break;
          case TestKind::MeanAbsN: mean_abs(report, ti); break;
        }
      }
    }
    return report;
  }

 private:
  const std::vector<double>& reference(std::size_t ti, std::size_t j) {
    auto it = references_.find(j);
    if (it == references_.end()) {
      it = references_
               .emplace(j, reference_marginal(s_, s_.u[j], s_.t_ladder[ti], reference_size(s_),
                                              scenario_tag(tags::kReference, ti, j), exec_))
               .first;
    }
    return it->second;
  }

  TestRecord record(const std::string& test, std::size_t ti, const std::string& u) const {
    TestRecord r;
    r.test = test;
    r.t = s_.t_ladder[ti];
    r.u = u;
    return r;
  }

  static std::string pair_label(double a, double b) { return short_fmt(a) + ";" + short_fmt(b); }

  void ks_marginal(TestReport& report, std::size_t ti, const SampleMatrix& sim) {
    std::vector<double> probs(kQuantiles);
    for (std::size_t i = 0; i < kQuantiles; ++i) {
      probs[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(kQuantiles);
    }
    for (std::size_t j = 0; j < s_.u.size(); ++j) {
      const double u = s_.u[j];
      const std::vector<double> col = sim.column(j);
      TestRecord r = record("ks_marginal", ti, short_fmt(u));
      QuantileSeries q{s_.t_ladder[ti], u, probs, sample_quantiles(col, kQuantiles), {}};
      KsResult ks;
      if (has_exact_marginal(s_.spec)) {
        ks = ks_against_exact(s_, u, col);
        q.reference = exact_quantiles(s_, u, probs);
        r.detail = exponential_limit(s_.spec) ? "one-sample vs Exp(1)" : "one-sample vs normal";
        r.reference = exponential_limit(s_.spec) ? 1.0 : limit_variance(s_.spec, u);
      } else {
        const std::vector<double>& ref = reference(ti, j);
        ks = ks_two_sample(col, ref);
        q.reference = sample_quantiles(ref, kQuantiles);
        r.detail = "two-sample vs simulated limit, m=" + std::to_string(ref.size());
        r.reference = 0.0;
      }
      r.statistic = ks.statistic;
      r.p_value = ks.p_value;
      r.pass = ks.p_value > s_.significance;
      report.records.push_back(std::move(r));
      report.quantiles.push_back(std::move(q));
    }
  }

  void moments(TestReport& report, std::size_t ti, const SampleMatrix& sim, int k_max) {
    const LimitSpec& spec = s_.spec;
    for (std::size_t j = 0; j < s_.u.size(); ++j) {
      const double u = s_.u[j];
      const std::vector<double> col = sim.column(j);
      for (int k = 1; k <= k_max; ++k) {
        TestRecord r = record("moments:" + std::to_string(k), ti, short_fmt(u));
        MomentTest m;
        if (scaled(spec.regime)) {
          double ref = 0.0;
          if (spec.regime == Regime::D4) {
            ref = moments_inverse_case(spec.alpha, spec.beta, u, k);
          } else if (spec.regime != Regime::A3) {
            ref = normal_moment(limit_variance(spec, u), k);
          }
          ref += s_.reference_shift;
          m = moment_test(col, k, ref);
          r.reference = ref;
          r.detail = "sectioned, 20 batches";
        } else {
          m = moment_test_two_sample(col, reference(ti, j), k);
          r.reference = m.estimate - m.z * m.std_error;
          r.detail = "sectioned two-sample vs simulated limit";
        }
        r.statistic = m.estimate;
        r.z_score = m.z;
        r.p_value = m.p_value;
        r.pass = m.finite && std::abs(m.z) < s_.z_threshold;
        if (!m.finite) r.detail = "non-finite empirical moment";
        report.records.push_back(std::move(r));
      }
    }
  }

  void joint(TestReport& report, std::size_t ti, const SampleMatrix& sim) {
    const std::size_t m = s_.u.size();
    if (!scaled(s_.spec.regime)) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          const CorrelationTest c = correlation_test(sim.column(i), sim.column(j));
          TestRecord r = record("joint_pairwise", ti, pair_label(s_.u[i], s_.u[j]));
          r.statistic = c.rho;
          r.reference = 0.0;
          r.z_score = c.z;
          r.p_value = c.p_value;
          r.pass = std::abs(c.z) < s_.z_threshold;
          r.detail = "correlation, independent copies";
          report.records.push_back(std::move(r));
        }
      }
      return;
    }
    const std::size_t n = std::min({s_.energy_sample, s_.replicates, reference_size(s_)});
    const SampleMatrix ref =
        reference_joint(s_, n, scenario_tag(tags::kReference, ti, kJointColumn), exec_);
    std::size_t pair = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j, ++pair) {
        std::vector<Point2> x(n);
        std::vector<Point2> y(n);
        for (std::size_t k = 0; k < n; ++k) {
          x[k] = {sim.at(k, i), sim.at(k, j)};
          y[k] = {ref.at(k, i), ref.at(k, j)};
        }
        Stream stream(s_.seed, StreamId{scenario_tag(tags::kPermutation, ti, pair), 0});
        const EnergyTest e = energy_distance_test(x, y, s_.permutations, stream, exec_);
        TestRecord r = record("joint_pairwise", ti, pair_label(s_.u[i], s_.u[j]));
        r.statistic = e.statistic;
        r.reference = 0.0;
        r.p_value = e.p_value;
        r.pass = e.p_value > s_.significance;
        r.detail = "energy distance vs simulated limit paths, n=" + std::to_string(n);
        report.records.push_back(std::move(r));
      }
    }
  }

  void time_reversal(TestReport& report, std::size_t ti) {
    const double t = s_.t_ladder[ti];
    const IncrementLaw& law = s_.spec.law;
    for (std::size_t j = 0; j < s_.u.size(); ++j) {
      const double span = s_.u[j];
      TestRecord r = record("time_reversal", ti, short_fmt(span));
      if (span > t) {
        r.detail = "window longer than t";
        r.pass = false;
        report.records.push_back(std::move(r));
        continue;
      }
      const SampleMatrix back = generate_rows(
          {span}, t, s_.replicates, s_.seed, scenario_tag(tags::kReversal, ti, j), exec_,
          [&](Stream& stream, std::span<double> out) {
            const RenewalPath p = sample_path(law, t, DelayKind::Stationary, stream);
            out[0] = static_cast<double>(count_increment(p, t - span, t));
          });
      const SampleMatrix fwd = generate_rows(
          {span}, t, reference_size(s_), s_.seed,
          scenario_tag(tags::kReversal + 1, ti, j), exec_,
          [&](Stream& stream, std::span<double> out) {
            out[0] = static_cast<double>(count_streaming(law, span, DelayKind::Stationary, stream)) +
                     s_.reference_shift;
          });
      const KsResult ks = ks_two_sample(back.values, fwd.values);
      r.statistic = ks.statistic;
      r.reference = 0.0;
      r.p_value = ks.p_value;
      r.pass = ks.p_value > s_.significance;
      r.detail = "N*(t)-N*(t-s) vs N*(s), two-sample";
      report.records.push_back(std::move(r));
    }
  }

  void self_similarity(TestReport& report, std::size_t ti, const SampleMatrix& sim) {
    const double h = hurst_index(s_.spec);
    const std::size_t half = s_.replicates / 2;
    std::vector<double> base(half);
    for (std::size_t k = 0; k < half; ++k) base[k] = sim.at(k, 0);
    for (std::size_t j = 1; j < s_.u.size(); ++j) {
      const double factor = std::pow(s_.u[0] / s_.u[j], h);
      std::vector<double> scaled_col;
      for (std::size_t k = half; k < s_.replicates; ++k) {
        scaled_col.push_back(sim.at(k, j) * factor + s_.reference_shift);
      }
      const KsResult ks = ks_two_sample(base, scaled_col);
      TestRecord r = record("self_similarity", ti, pair_label(s_.u[0], s_.u[j]));
      r.statistic = ks.statistic;
      r.reference = h;
      r.p_value = ks.p_value;
      r.pass = ks.p_value > s_.significance;
      r.detail = "X(u0) vs (u0/u)^H X(u) on disjoint halves, H=" + short_fmt(h);
      report.records.push_back(std::move(r));
    }
  }

  void stationarity(TestReport& report, std::size_t ti, const SampleMatrix& sim) {
    for (std::size_t i = 0; i < s_.u.size(); ++i) {
      for (std::size_t j = i; j < s_.u.size(); ++j) {
        const double lag = std::log(s_.u[j] / s_.u[i]);
        const double ref = stationary_covariance(s_.spec.alpha, lag) + s_.reference_shift;
        const MomentTest m = covariance_test(sim.column(i), sim.column(j), ref);
        TestRecord r = record("stationarity_logtime", ti, pair_label(s_.u[i], s_.u[j]));
        r.statistic = m.estimate;
        r.reference = ref;
        r.z_score = m.z;
        r.p_value = m.p_value;
        r.pass = m.finite && std::abs(m.z) < s_.z_threshold;
        r.detail = "covariance vs R(" + short_fmt(lag) + ")";
        report.records.push_back(std::move(r));
      }
    }
  }

  void mean_abs(TestReport& report, std::size_t ti) {
    const LimitSpec& spec = s_.spec;
    const double t = s_.t_ladder[ti];
    const double umax = *std::max_element(s_.u.begin(), s_.u.end());
    const bool d4 = spec.regime == Regime::D4;
    const double norm = d4 ? spec.law.tail_prob(t) : 1.0 / scaling_g(spec, t);
    const double mu = spec.law.mean();
    const SampleMatrix counts = generate_rows(
        s_.u, t, s_.replicates, s_.seed, scenario_tag(tags::kSimulation, ti, 0), exec_,
        [&](Stream& stream, std::span<double> out) {
          const RenewalPath p = sample_path(spec.law, umax * t, s_.delay, stream);
          for (std::size_t j = 0; j < s_.u.size(); ++j) {
            const double x = s_.u[j] * t;
            const double n = static_cast<double>(count(p, x));
            out[j] = d4 ? n * norm : std::abs(n - x / mu) * norm;
          }
        });
    for (std::size_t j = 0; j < s_.u.size(); ++j) {
      const double u = s_.u[j];
      double ref;
      if (d4) {
        ref = moments_inverse_case(spec.alpha, 0.0, u, 1);
      } else if (spec.regime == Regime::A3) {
        ref = std::pow(u, 1.0 / spec.alpha) * abs_moment(spec.alpha, 1.0);
      } else {
        ref = std::sqrt(u) * abs_moment(2.0, 1.0);
      }
      ref += s_.reference_shift;
      const MomentTest m = moment_test(counts.column(j), 1, ref);
      TestRecord r = record("mean_abs_n", ti, short_fmt(u));
      r.statistic = m.estimate;
      r.reference = ref;
      r.z_score = m.z;
      r.p_value = m.p_value;
      const double rel = std::abs(m.estimate / ref - 1.0);
      r.pass = m.finite && rel < s_.mean_abs_tolerance;
      r.detail = "relative error " + short_fmt(rel) + ", tolerance " +
                 short_fmt(s_.mean_abs_tolerance);
      report.records.push_back(std::move(r));
    }
  }

  const Scenario& s_;
  Execution exec_;
  std::map<std::size_t, std::vector<double>> references_;
};

}  // namespace

std::string test_name(const TestPlan& plan) {
  switch (plan.kind) {
    case TestKind::KsMarginal: return "ks_marginal";
    case TestKind::Moments: return "moments:" + std::to_string(plan.k_max);
    case TestKind::JointPairwise: return "joint_pairwise";
    case TestKind::TimeReversal: return "time_reversal";
    case TestKind::SelfSimilarity: return "self_similarity";
    case TestKind::StationarityLogtime: return "stationarity_logtime";
    case TestKind::MeanAbsN: return "mean_abs_n";
  }
  return "?";
}

TestPlan parse_test(std::string_view text) {
  if (text.rfind("moments", 0) == 0) {
    TestPlan p{TestKind::Moments, 0};
    if (text.size() == 7) {
      p.k_max = 2;
      return p;
    }
    if (text[7] != ':') throw ConfigError("bad test '" + std::string(text) + "'");
    try {
      std::size_t used = 0;
      const std::string num(text.substr(8));
      p.k_max = std::stoi(num, &used);
      if (used != num.size() || p.k_max < 1 || p.k_max > 12) throw std::invalid_argument("k");
    } catch (const std::exception&) {
      throw ConfigError("moments:K needs an integer K in [1,12], got '" + std::string(text) + "'");
    }
    return p;
  }
  static const std::pair<std::string_view, TestKind> names[] = {
      {"ks_marginal", TestKind::KsMarginal},
      {"joint_pairwise", TestKind::JointPairwise},
      {"joint_independence", TestKind::JointPairwise},
      {"time_reversal", TestKind::TimeReversal},
      {"self_similarity", TestKind::SelfSimilarity},
      {"stationarity_logtime", TestKind::StationarityLogtime},
      {"mean_abs_n", TestKind::MeanAbsN},
  };
  for (const auto& [name, kind] : names) {
    if (name == text) return TestPlan{kind, 0};
  }
  throw ConfigError("unknown test '" + std::string(text) + "'");
}

void validate(const Scenario& s, std::size_t min_replicates) {
  if (s.replicates < std::max<std::size_t>(min_replicates, 1)) {
    bad_config("replicates must be at least " + std::to_string(min_replicates));
  }
  if (s.u.empty() || s.u.size() > kMaxGrid) bad_config("u-grid needs 1 to 16 points");
  if (s.t_ladder.empty() || s.t_ladder.size() > kMaxGrid) bad_config("t-ladder needs 1 to 16 rungs");
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    if (!(s.u[i] > 0.0) || !std::isfinite(s.u[i])) bad_config("u-grid must be positive");
    if (i > 0 && !(s.u[i] > s.u[i - 1])) bad_config("u-grid must be strictly increasing");
  }
  for (std::size_t i = 0; i < s.t_ladder.size(); ++i) {
    if (!(s.t_ladder[i] > 0.0) || !std::isfinite(s.t_ladder[i])) bad_config("t-ladder must be positive");
    if (i > 0 && !(s.t_ladder[i] > s.t_ladder[i - 1])) {
      bad_config("t-ladder must be strictly increasing");
    }
  }
  if (!(s.significance > 0.0 && s.significance < 1.0)) bad_config("significance must lie in (0,1)");
  if (!(s.z_threshold > 0.0)) bad_config("z_threshold must be positive");
  if (!(s.mean_abs_tolerance > 0.0)) bad_config("mean_abs_tolerance must be positive");
  if (!(s.max_shots > 0.0)) bad_config("max_shots must be positive");
  if (s.reference_mesh < 0.0 || s.truncation < 0.0) bad_config("mesh and truncation must be >= 0");
  if (!std::isfinite(s.reference_shift)) bad_config("reference_shift must be finite");
  if (s.permutations < 19 || s.energy_sample < 20) bad_config("energy test too small");
  if (s.plan.empty()) bad_config("empty test plan");

  validate(s.spec);
  if (s.delay == DelayKind::Stationary && !s.spec.law.finite_mean()) {
    throw InadmissibleError("stationary delay requires a finite mean");
  }
  if (scaled(s.spec.regime)) {
    for (double t : s.t_ladder) {
      try {
        (void)scaling_g(s.spec, t);
      } catch (const std::invalid_argument& e) {
        bad_config(e.what());
      }
    }
  }

  const Regime r = s.spec.regime;
  const std::string regime(regime_name(r));
  for (const TestPlan& p : s.plan) {
    const std::string name = test_name(p);
    switch (p.kind) {
      case TestKind::KsMarginal: break;
      case TestKind::Moments:
        if (r == Regime::A3 && p.k_max > 1) {
          throw InadmissibleError(name + ": A3 limit has infinite moments of order >= alpha");
        }
        break;
      case TestKind::JointPairwise:
        if (s.u.size() < 2) bad_config(name + " needs at least two u values");
        break;
      case TestKind::TimeReversal:
        if (!s.spec.law.finite_mean()) throw InadmissibleError(name + " requires a finite mean");
        break;
      case TestKind::SelfSimilarity:
        if (!scaled(r)) throw InadmissibleError(name + " is undefined in " + regime);
        if (s.u.size() < 2) bad_config(name + " needs at least two u values");
        break;
      case TestKind::StationarityLogtime:
        if (!exponential_limit(s.spec)) {
          throw InadmissibleError(name + " needs regime D4 with alpha = beta");
        }
        break;
      case TestKind::MeanAbsN:
        if (!scaled(r)) throw InadmissibleError(name + " is undefined in " + regime);
        break;
    }
  }

  const double shots = total_expected_shots(s);
  if (shots > s.max_shots) {
    std::ostringstream msg;
    msg << "scenario needs about " << shots << " shot evaluations, above max_shots="
        << s.max_shots;
    throw ResourceCapError(msg.str());
  }
}

bool TestReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const TestRecord& r) { return r.pass; });
}

SampleMatrix scenario_samples(const Scenario& s, std::size_t t_index, Execution exec) {
  ScaledRequest req;
  req.spec = s.spec;
  req.u = s.u;
  req.t = s.t_ladder.at(t_index);
  req.replicates = s.replicates;
  req.seed = s.seed;
  req.tag = scenario_tag(tags::kSimulation, t_index, 0);
  req.delay = s.delay;
  req.max_shots = s.max_shots;
  return simulate_scaled(req, exec);
}

std::vector<double> reference_marginal(const Scenario& s, double u, double t, std::size_t n,
                                       std::uint32_t tag, Execution exec) {
  const LimitSpec& spec = s.spec;
  const double shift = s.reference_shift;
  const double mesh = reference_mesh(s);
  const double truncation = s.truncation > 0.0 ? s.truncation : u * t;
  SampleMatrix m = generate_rows({u}, t, n, s.seed, tag, exec, [&](Stream& stream,
                                                                    std::span<double> out) {
    double v = 0.0;
    switch (spec.regime) {
      case Regime::A1:
      case Regime::A2: v = marginal_sample_finite_mean(2.0, spec.beta, u, stream); break;
      case Regime::A3: v = marginal_sample_finite_mean(spec.alpha, spec.beta, u, stream); break;
      case Regime::D4:
        if (spec.alpha == spec.beta) {
          v = stream.exponential();
        } else {
          const ProcessPath path = simulate_inverse_subordinator_path(spec.alpha, u, mesh, stream);
          v = frac_integral(path, spec.beta, u);
        }
        break;
      case Regime::NoScaleDri: v = sample_X_star(spec.law, spec.h, truncation, stream).value; break;
      case Regime::NoScaleCentered:
        v = sample_X_star_centered(spec.law, spec.h, truncation, stream, spec.unchecked_hypotheses);
        break;
    }
    out[0] = v + shift;
  });
  return std::move(m.values);
}

SampleMatrix reference_joint(const Scenario& s, std::size_t n, std::uint32_t tag,
                             Execution exec) {
  const LimitSpec& spec = s.spec;
  if (!scaled(spec.regime)) {
    throw InadmissibleError("joint limit paths exist only for the scaled regimes");
  }
  const double umax = *std::max_element(s.u.begin(), s.u.end());
  const double mesh = reference_mesh(s);
  const double alpha = spec.regime == Regime::A3 ? spec.alpha : 2.0;
  return generate_rows(s.u, 0.0, n, s.seed, tag, exec, [&](Stream& stream,
                                                            std::span<double> out) {
    const ProcessPath path = spec.regime == Regime::D4
                                 ? simulate_inverse_subordinator_path(spec.alpha, umax, mesh, stream)
                                 : simulate_levy_path(alpha, umax, mesh, stream);
    for (std::size_t j = 0; j < s.u.size(); ++j) {
      out[j] = frac_integral(path, spec.beta, s.u[j]) + s.reference_shift;
    }
  });
}

TestReport run_scenario(const Scenario& scenario, Execution exec) {
  validate(scenario);
  return Runner(scenario, exec).run();
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_report_json(std::ostream& out, const TestReport& report, const std::string& echo) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["scenario"] = echo;
  doc["seed"] = report.seed;
  doc["verdict"] = report.all_pass() ? "pass" : "fail";
  ordered_json records = ordered_json::array();
  for (const TestRecord& r : report.records) {
    ordered_json j;
    j["test"] = r.test;
    j["t"] = r.t;
    j["u"] = r.u;
    j["statistic"] = r.statistic;
    j["reference"] = r.reference;
    j["p_value"] = r.p_value ? ordered_json(*r.p_value) : ordered_json(nullptr);
    j["z_score"] = r.z_score ? ordered_json(*r.z_score) : ordered_json(nullptr);
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    records.push_back(std::move(j));
  }
  doc["records"] = std::move(records);
  out << doc.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const TestReport& report) {
  out << "test,t,u,statistic,reference,p_value,z_score,pass,detail\n";
  for (const TestRecord& r : report.records) {
    out << csv_field(r.test) << ',' << fmt(r.t) << ',' << csv_field(r.u) << ','
        << fmt(r.statistic) << ',' << fmt(r.reference) << ','
        << (r.p_value ? fmt(*r.p_value) : "") << ',' << (r.z_score ? fmt(*r.z_score) : "")
        << ',' << (r.pass ? "true" : "false") << ',' << csv_field(r.detail) << '\n';
  }
}

void write_quantiles_csv(std::ostream& out, const TestReport& report) {
  out << "t,u,probability,sample,reference\n";
  for (const QuantileSeries& q : report.quantiles) {
    for (std::size_t i = 0; i < q.probability.size(); ++i) {
      out << fmt(q.t) << ',' << fmt(q.u) << ',' << fmt(q.probability[i]) << ','
          << fmt(q.sample[i]) << ',' << (i < q.reference.size() ? fmt(q.reference[i]) : "")
          << '\n';
    }
  }
}

}  // namespace rsn
