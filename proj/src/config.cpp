#include "rsn/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <variant>

#include "rsn/errors.hpp"

namespace rsn {
namespace {

namespace pt = boost::property_tree;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_number(const std::string& where, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + text + "' is not a finite number");
  }
}

std::uint64_t to_unsigned(const std::string& where, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + text + "' is not a nonnegative integer");
  }
}

class Section {
 public:
  Section(const pt::ptree* node, std::string name) : node_(node), name_(std::move(name)) {}

  bool has(const std::string& key) const {
    return node_ != nullptr && node_->find(key) != node_->not_found();
  }

  std::string text(const std::string& key) {
    used_.insert(key);
    if (!has(key)) throw ConfigError("[" + name_ + "] missing key '" + key + "'");
    return trim(node_->get<std::string>(key));
  }

  std::string text(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : (used_.insert(key), fallback);
  }

  double number(const std::string& key) { return to_number(where(key), text(key)); }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : (used_.insert(key), fallback);
  }

  std::uint64_t whole(const std::string& key, std::uint64_t fallback) {
    return has(key) ? to_unsigned(where(key), text(key)) : (used_.insert(key), fallback);
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = text(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where(key) + ": expected true or false, got '" + v + "'");
  }

  std::vector<double> numbers(const std::string& key, const std::string& fallback) {
    std::vector<double> out;
    for (const std::string& item : split_list(text(key, fallback))) {
      out.push_back(to_number(where(key), item));
    }
    return out;
  }

  /// Rejects keys that were never read.
  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& [key, child] : *node_) {
      if (!child.empty()) throw ConfigError("[" + name_ + "] nested key '" + key + "'");
      if (!used_.count(key)) throw ConfigError("[" + name_ + "] unknown key '" + key + "'");
    }
  }

  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

 private:
  const pt::ptree* node_;
  std::string name_;
  std::set<std::string> used_;
};

template <class F>
auto build(const std::string& section, F&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("[" + section + "] " + e.what());
  }
}

IncrementLaw parse_law(Section& s) {
  const std::string family = s.text("family");
  return build("law", [&] {
    if (family == "exponential") return IncrementLaw::exponential(s.number("rate", 1.0));
    if (family == "uniform") {
      const double a = s.number("a");
      return IncrementLaw::uniform(a, s.number("b"));
    }
    if (family == "gamma") {
      const double shape = s.number("shape");
      return IncrementLaw::gamma(shape, s.number("rate", 1.0));
    }
    if (family == "pareto") {
      const double alpha = s.number("alpha");
      return IncrementLaw::pareto(alpha, s.number("scale", 1.0));
    }
    throw ConfigError("[law] unknown family '" + family + "'");
  });
}

ResponseFunction parse_response(Section& s) {
  const std::string family = s.text("family");
  return build("response", [&] {
    if (family == "power") {
      const double beta = s.number("beta");
      return ResponseFunction::power_decay(beta, s.number("offset", 1.0));
    }
    if (family == "exp") return ResponseFunction::exp_decay(s.number("rate", 1.0));
    if (family == "window") {
      const double a = s.number("a");
      return ResponseFunction::window(a, s.number("b"));
    }
    if (family == "constant") return ResponseFunction::constant(s.number("value", 1.0));
    if (family == "pareto_tail") {
      const double alpha = s.number("alpha");
      const double scale = s.number("scale", 1.0);
      return ResponseFunction::pareto_tail_match(alpha, scale, s.number("multiplier", 1.0));
    }
    throw ConfigError("[response] unknown family '" + family + "'");
  });
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out;
}

}  // namespace

Scenario parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& [name, child] : tree) {
    static const std::set<std::string> known{"law", "response", "regime", "grid", "run"};
    if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");
    if (child.empty()) throw ConfigError("key '" + name + "' outside any section");
  }
  const auto section = [&](const char* name) {
    const auto it = tree.find(name);
    return Section(it == tree.not_found() ? nullptr : &it->second, name);
  };

  Scenario s;
  Section law = section("law");
  Section response = section("response");
  Section regime = section("regime");
  Section grid = section("grid");
  Section run = section("run");

  s.spec.law = parse_law(law);
  s.spec.h = parse_response(response);
  try {
    s.spec.regime = parse_regime(regime.text("kind"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[regime] ") + e.what());
  }
  double alpha_default = 2.0;
  if (s.spec.regime == Regime::A3 || s.spec.regime == Regime::D4) {
    alpha_default = s.spec.law.tail_index();
  }
  s.spec.alpha = regime.number("alpha", alpha_default);
  s.spec.beta = regime.number("beta", s.spec.h.rv_index().value_or(0.0));
  s.spec.unchecked_hypotheses = regime.flag("unchecked_hypotheses", false);

  s.u = grid.numbers("u", "1");
  s.t_ladder = grid.numbers("t", "100, 1000, 10000");

  s.replicates = run.whole("replicates", 1000);
  s.seed = run.whole("seed", 1);
  s.plan.clear();
  for (const std::string& item : split_list(run.text("tests", "ks_marginal"))) {
    s.plan.push_back(parse_test(item));
  }
  const std::string delay = run.text("delay", "zero");
  if (delay == "zero") {
    s.delay = DelayKind::ZeroDelayed;
  } else if (delay == "stationary") {
    s.delay = DelayKind::Stationary;
  } else {
    throw ConfigError("[run] delay must be zero or stationary, got '" + delay + "'");
  }
  s.significance = run.number("significance", s.significance);
  s.z_threshold = run.number("z_threshold", s.z_threshold);
  s.mean_abs_tolerance = run.number("mean_abs_tolerance", s.mean_abs_tolerance);
  s.max_shots = run.number("max_shots", s.max_shots);
  s.reference_replicates = run.whole("reference_replicates", 0);
  s.reference_mesh = run.number("reference_mesh", 0.0);
  s.truncation = run.number("truncation", 0.0);
  s.reference_shift = run.number("reference_shift", 0.0);
  s.energy_sample = run.whole("energy_sample", s.energy_sample);
  s.permutations = run.whole("permutations", s.permutations);

  for (const Section* sec : {&law, &response, &regime, &grid, &run}) sec->finish();
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(in);
}

std::string echo_config(const Scenario& s) {
  std::ostringstream out;
  out << "[law]\n";
  std::visit(Overloaded{
                 [&](const Exponential& e) {
                   out << "family = exponential\nrate = " << num(e.rate) << '\n';
                 },
                 [&](const Uniform& u) {
                   out << "family = uniform\na = " << num(u.a) << "\nb = " << num(u.b) << '\n';
                 },
                 [&](const GammaLaw& g) {
                   out << "family = gamma\nshape = " << num(g.shape) << "\nrate = " << num(g.rate)
                       << '\n';
                 },
                 [&](const Pareto& p) {
                   out << "family = pareto\nalpha = " << num(p.alpha)
                       << "\nscale = " << num(p.scale) << '\n';
                 },
             },
             s.spec.law.family());
  out << "\n[response]\n";
  std::visit(Overloaded{
                 [&](const PowerDecay& p) {
                   out << "family = power\nbeta = " << num(p.beta) << "\noffset = " << num(p.offset)
                       << '\n';
                 },
                 [&](const ExpDecay& e) { out << "family = exp\nrate = " << num(e.rate) << '\n'; },
                 [&](const Window& w) {
                   out << "family = window\na = " << num(w.a) << "\nb = " << num(w.b) << '\n';
                 },
                 [&](const Constant& c) {
                   out << "family = constant\nvalue = " << num(c.value) << '\n';
                 },
                 [&](const ParetoTailMatch& p) {
                   out << "family = pareto_tail\nalpha = " << num(p.alpha)
                       << "\nscale = " << num(p.scale) << "\nmultiplier = " << num(p.multiplier)
                       << '\n';
                 },
             },
             s.spec.h.family());
  out << "\n[regime]\nkind = " << regime_name(s.spec.regime) << "\nalpha = " << num(s.spec.alpha)
      << "\nbeta = " << num(s.spec.beta)
      << "\nunchecked_hypotheses = " << (s.spec.unchecked_hypotheses ? "true" : "false") << '\n';
  out << "\n[grid]\nu = " << join(s.u) << "\nt = " << join(s.t_ladder) << '\n';
  out << "\n[run]\nreplicates = " << s.replicates << "\nseed = " << s.seed << "\ntests = ";
  for (std::size_t i = 0; i < s.plan.size(); ++i) out << (i ? ", " : "") << test_name(s.plan[i]);
  out << "\ndelay = " << (s.delay == DelayKind::Stationary ? "stationary" : "zero")
      << "\nsignificance = " << num(s.significance) << "\nz_threshold = " << num(s.z_threshold)
      << "\nmean_abs_tolerance = " << num(s.mean_abs_tolerance)
      << "\nmax_shots = " << num(s.max_shots)
      << "\nreference_replicates = " << s.reference_replicates
      << "\nreference_mesh = " << num(s.reference_mesh) << "\ntruncation = " << num(s.truncation)
      << "\nreference_shift = " << num(s.reference_shift)
      << "\nenergy_sample = " << s.energy_sample << "\npermutations = " << s.permutations
      << '\n';
  return out.str();
}

}  // namespace rsn
