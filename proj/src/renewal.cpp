#include "rsn/renewal.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rsn/errors.hpp"

namespace rsn {
namespace {

double first_epoch(const IncrementLaw& law, DelayKind delay, Stream& stream) {
  if (delay == DelayKind::ZeroDelayed) return 0.0;
  if (!law.finite_mean()) {
    throw InadmissibleError("stationary renewal path requires a finite mean, got " +
                            law.describe());
  }
  return law.sample_stationary_delay(stream);
}

void check_time(const RenewalPath& path, double t) {
  if (!(t >= 0.0)) throw std::domain_error("renewal path queried at negative time");
  if (t > path.horizon) {
    std::ostringstream msg;
    msg << "renewal path queried at t=" << t << " beyond its horizon " << path.horizon;
    throw std::domain_error(msg.str());
  }
}

}  // namespace

RenewalWalker::RenewalWalker(const IncrementLaw& law, double horizon, DelayKind delay,
                             Stream& stream)
    : walker_(first_epoch(law, delay, stream), Draw{&law, &stream}, horizon) {}

RenewalPath sample_path(const IncrementLaw& law, double horizon, DelayKind delay,
                        Stream& stream) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sample_path: horizon must be positive");
  RenewalPath path;
  path.horizon = horizon;
  path.delay = delay;
  path.seed = stream.seed();
  path.stream = stream.stream_id();
  RenewalWalker walker(law, horizon, delay, stream);
  while (auto s = walker.next()) path.arrivals.push_back(*s);
  return path;
}

std::size_t count(const RenewalPath& path, double t) {
  check_time(path, t);
  return static_cast<std::size_t>(
      std::upper_bound(path.arrivals.begin(), path.arrivals.end(), t) - path.arrivals.begin());
}

double undershoot(const RenewalPath& path, double t) {
  const std::size_t n = count(path, t);
  if (n == 0) throw std::domain_error("undershoot: no arrival at or before t");
  return t - path.arrivals[n - 1];
}

std::size_t count_increment(const RenewalPath& path, double s, double t) {
  if (s > t) throw std::domain_error("count_increment: need s <= t");
  check_time(path, t);
  check_time(path, s);
  const auto lo = std::lower_bound(path.arrivals.begin(), path.arrivals.end(), s);
  const auto hi = std::upper_bound(lo, path.arrivals.end(), t);
  return static_cast<std::size_t>(hi - lo);
}

std::size_t count_streaming(const IncrementLaw& law, double t, DelayKind delay,
                            Stream& stream) {
  RenewalWalker walker(law, t, delay, stream);
  std::size_t n = 0;
  while (walker.next()) ++n;
  return n;
}

void write_path_csv(std::ostream& out, const RenewalPath& path) {
  out << "k,S_k\n";
  char buf[64];
  for (std::size_t k = 0; k < path.arrivals.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, path.arrivals[k]);
    out << buf;
  }
}

}  // namespace rsn
