#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "rsn/laws.hpp"
#include "rsn/rng.hpp"

namespace rsn {

enum class DelayKind { ZeroDelayed, Stationary };

/// Arrival epochs S_0 < S_1 < ... <= horizon of one renewal path. The first
/// epoch past the horizon is drawn and discarded, so counts on [0, horizon]
/// are exact.
struct RenewalPath {
  std::vector<double> arrivals;
  double horizon = 0.0;
  DelayKind delay = DelayKind::ZeroDelayed;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Streams the epochs of a renewal path up to a horizon without storing them.
/// `next_increment` is any callable returning the next (positive) increment.
template <class NextIncrement>
class BasicRenewalWalker {
 public:
  BasicRenewalWalker(double first_epoch, NextIncrement next_increment, double horizon)
      : epoch_(first_epoch), next_increment_(std::move(next_increment)), horizon_(horizon) {}

  /// The next epoch <= horizon, or nothing once the walk has overshot.
  std::optional<double> next() {
    if (done_) return std::nullopt;
    if (started_) epoch_ += next_increment_();
    started_ = true;
    if (epoch_ > horizon_) {
      done_ = true;
      return std::nullopt;
    }
    return epoch_;
  }

 private:
  double epoch_;
  NextIncrement next_increment_;
  double horizon_;
  bool started_ = false;
  bool done_ = false;
};

/// Collects a walker's epochs into a path.
template <class NextIncrement>
RenewalPath build_path(double first_epoch, NextIncrement&& next_increment, double horizon,
                       DelayKind delay) {
  RenewalPath path;
  path.horizon = horizon;
  path.delay = delay;
  BasicRenewalWalker walker(first_epoch, std::forward<NextIncrement>(next_increment), horizon);
  while (auto s = walker.next()) path.arrivals.push_back(*s);
  return path;
}

/// Epoch stream for a law: S_0 = 0 (zero-delayed) or a stationary delay,
/// followed by i.i.d. increments drawn from `stream`.
class RenewalWalker {
 public:
  RenewalWalker(const IncrementLaw& law, double horizon, DelayKind delay, Stream& stream);

  std::optional<double> next() { return walker_.next(); }

 private:
  struct Draw {
    const IncrementLaw* law;
    Stream* stream;
    double operator()() const { return law->sample(*stream); }
  };
  BasicRenewalWalker<Draw> walker_;
};

/// Throws InadmissibleError for a stationary path under an infinite-mean law.
RenewalPath sample_path(const IncrementLaw& law, double horizon, DelayKind delay,
                        Stream& stream);

/// N(t) = #{k : S_k <= t}.
std::size_t count(const RenewalPath& path, double t);

/// t - S_{N(t)-1}: time since the last arrival at or before t.
double undershoot(const RenewalPath& path, double t);

/// N(t) - N(s-) = #{k : s <= S_k <= t}.
std::size_t count_increment(const RenewalPath& path, double s, double t);

/// Number of arrivals <= t of a fresh path, without storing it.
std::size_t count_streaming(const IncrementLaw& law, double t, DelayKind delay, Stream& stream);

/// CSV dump: header `k,S_k`, one epoch per line.
void write_path_csv(std::ostream& out, const RenewalPath& path);

}  // namespace rsn
