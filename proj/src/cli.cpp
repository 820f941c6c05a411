#include "rsn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include "rsn/config.hpp"
#include "rsn/errors.hpp"
#include "rsn/kernels.hpp"
#include "rsn/limits.hpp"
#include "rsn/parallel.hpp"
#include "rsn/renewal.hpp"
#include "rsn/stable.hpp"
#include "rsn/verify.hpp"

namespace rsn::cli {
namespace {

int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InadmissibleError& e) {
    log << "inadmissible: " << e.what() << '\n';
    return kInadmissible;
  } catch (const ResourceCapError& e) {
    log << "resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    log << "invalid parameter: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kInternalError;
  }
}

Scenario load(const RunOptions& options) {
  if (options.config.empty()) throw ConfigError("--config is required");
  Scenario s = load_config(options.config);
  if (options.seed) s.seed = *options.seed;
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

std::string stem_of(const std::string& path) {
  const std::string ext = ".json";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size());
  }
  return path;
}

std::string format_value(double v) {
  char buf[48];
  const double a = std::abs(v);
  if (v == 0.0 || (a >= 1e-4 && a < 1e8)) {
    std::snprintf(buf, sizeof buf, "%.12f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.12e", v);
  }
  return buf;
}

}  // namespace

int cmd_simulate(const RunOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    const Scenario s = load(options);
    validate(s, 1);
    const std::size_t last = s.t_ladder.size() - 1;
    const SampleMatrix m = scenario_samples(s, last);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!options.out.empty()) {
      file = open_out(options.out);
      out = &file;
    }
    *out << "t,replicate,u,value\n";
    char buf[96];
    for (std::size_t i = 0; i < m.replicates; ++i) {
      for (std::size_t j = 0; j < m.columns(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", m.t, i, m.u[j], m.at(i, j));
        *out << buf;
      }
    }
    log << "simulated " << m.replicates << " replicates x " << m.columns() << " u-values at t="
        << m.t << '\n';
    return kOk;
  });
}

int cmd_verify(const RunOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    const Scenario s = load(options);
    if (options.out.empty()) throw ConfigError("--out is required for verify");
    const TestReport report = run_scenario(s);
    const std::string stem = stem_of(options.out);
    {
      std::ofstream json = open_out(options.out);
      write_report_json(json, report, echo_config(s));
    }
    {
      std::ofstream csv = open_out(stem + ".csv");
      write_report_csv(csv, report);
    }
    {
      std::ofstream q = open_out(stem + ".quantiles.csv");
      write_quantiles_csv(q, report);
    }
    std::size_t failed = 0;
    for (const TestRecord& r : report.records) {
      failed += !r.pass;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%-4s %-22s t=%-8g u=%-8s stat=%-12.6g p=%-10s z=%s\n",
                    r.pass ? "ok" : "FAIL", r.test.c_str(), r.t, r.u.c_str(), r.statistic,
                    r.p_value ? format_value(*r.p_value).c_str() : "-",
                    r.z_score ? format_value(*r.z_score).c_str() : "-");
      log << buf;
    }
    log << (failed == 0 ? "all " : "") << report.records.size() - failed << " of "
        << report.records.size() << " tests passed\n";
    return failed == 0 ? kOk : kTestsFailed;
  });
}

int cmd_formula(const std::string& name, const std::map<std::string, double>& params, bool json,
                std::ostream& out, std::ostream& log) {
  struct Formula {
    const char* name;
    std::vector<std::string> needs;
    std::function<double(const std::map<std::string, double>&, nlohmann::ordered_json&)> eval;
  };
  const auto integer = [](double v, const char* what) {
    if (v != std::floor(v)) throw std::invalid_argument(std::string(what) + " must be an integer");
    return static_cast<int>(v);
  };
  const std::vector<Formula> formulas = {
      {"moments", {"alpha", "beta", "u", "k"},
       [&](const auto& p, auto&) {
         return moments_inverse_case(p.at("alpha"), p.at("beta"), p.at("u"),
                                     integer(p.at("k"), "k"));
       }},
      {"absmoment", {"alpha", "r"},
       [](const auto& p, auto&) { return abs_moment(p.at("alpha"), p.at("r")); }},
      {"Rs", {"alpha", "s"},
       [](const auto& p, auto&) { return stationary_covariance(p.at("alpha"), p.at("s")); }},
      {"covariance", {"alpha", "beta", "t1", "t2"},
       [](const auto& p, auto&) {
         return covariance_inverse_case(p.at("alpha"), p.at("beta"), p.at("t1"), p.at("t2"));
       }},
      {"solve_c", {"alpha", "scale", "t"},
       [](const auto& p, auto&) {
         return solve_c(IncrementLaw::pareto(p.at("alpha"), p.at("scale")), p.at("t"));
       }},
      {"gap", {"alpha", "beta", "t1", "t2", "t3"},
       [](const auto& p, auto& extra) {
         const IncrementGap g = increment_dependence_gap(p.at("alpha"), p.at("beta"), p.at("t1"),
                                                         p.at("t2"), p.at("t3"));
         extra["a"] = g.a;
         extra["b"] = g.b;
         return g.gap;
       }},
  };
  const Formula* f = nullptr;
  for (const Formula& candidate : formulas) {
    if (name == candidate.name) f = &candidate;
  }
  if (f == nullptr) {
    log << "unknown formula '" << name << "' (moments, absmoment, Rs, covariance, solve_c, gap)\n";
    return kConfigError;
  }
  for (const std::string& key : f->needs) {
    if (!params.count(key)) {
      log << "formula " << name << " needs --" << key << '\n';
      return kConfigError;
    }
  }
  return guarded(log, [&] {
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::map<std::string, double> used;
    for (const std::string& key : f->needs) used[key] = params.at(key);
    const double value = f->eval(used, extra);
    if (json) {
      nlohmann::ordered_json doc;
      doc["formula"] = name;
      doc["params"] = used;
      doc["value"] = value;
      for (auto& [k, v] : extra.items()) doc[k] = v;
      out << doc.dump() << '\n';
    } else {
      out << format_value(value) << '\n';
    }
    return kOk;
  });
}

int cmd_path_dump(const RunOptions& options, std::uint64_t replicate, std::ostream& log) {
  return guarded(log, [&] {
    const Scenario s = load(options);
    validate(s, 1);
    const double horizon = *std::max_element(s.u.begin(), s.u.end()) * s.t_ladder.back();
    Stream stream(s.seed, StreamId{tags::kPathDump, replicate});
    const RenewalPath path = sample_path(s.spec.law, horizon, s.delay, stream);
    if (options.out.empty()) {
      write_path_csv(std::cout, path);
    } else {
      std::ofstream out = open_out(options.out);
      write_path_csv(out, path);
    }
    return kOk;
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Renewal shot noise simulator and limit-theorem checker", "renewalshot"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: $RENEWALSHOT_THREADS)")
      ->check(CLI::NonNegativeNumber);

  RunOptions options;
  std::uint64_t seed = 0;
  const auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--config", options.config, "Scenario config (INI)")->required();
    sub->add_option("--out", options.out, "Output path");
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::NonNegativeNumber);
  };
  CLI::App* simulate = app.add_subcommand("simulate", "Write scaled statistics as CSV");
  add_run_options(simulate);
  CLI::App* verify = app.add_subcommand("verify", "Run the scenario's test plan");
  add_run_options(verify);
  CLI::App* dump = app.add_subcommand("path-dump", "Write the epochs of one renewal path");
  add_run_options(dump);
  std::uint64_t replicate = 0;
  dump->add_option("--replicate", replicate, "Replicate index");

  CLI::App* formula = app.add_subcommand("formula", "Evaluate a closed-form quantity");
  std::string name;
  bool json = false;
  formula->add_option("name", name, "moments | absmoment | Rs | covariance | solve_c | gap")
      ->required();
  formula->add_flag("--json", json, "Machine-readable output");
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> given;
  static const char* kParams[] = {"alpha", "beta", "u", "k", "r", "s",
                                  "t1", "t2", "t3", "t", "scale"};
  for (const char* p : kParams) {
    given[p] = formula->add_option(std::string("--") + p, values[p]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? kOk : kConfigError;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("RENEWALSHOT_THREADS")) {
      threads = std::atoi(env);
    }
  }
  set_worker_count(threads);

  for (CLI::App* sub : {simulate, verify, dump}) {
    if (sub->parsed() && sub->count("--seed") > 0) options.seed = seed;
  }
  if (simulate->parsed()) return cmd_simulate(options, log);
  if (verify->parsed()) return cmd_verify(options, log);
  if (dump->parsed()) return cmd_path_dump(options, replicate, log);

  std::map<std::string, double> params;
  for (const auto& [key, opt] : given) {
    if (opt->count() > 0) params[key] = values[key];
  }
  return cmd_formula(name, params, json, out, log);
}

}  // namespace rsn::cli
