#pragma once

// Counter-based random streams (Philox4x32-10).
//
// A stream is addressed by (seed, stream id); its n-th block of output is a
// pure function of (seed, stream id, n). Replicate i of an experiment draws
// from stream (seed, StreamId{tag, i}), so results never depend on how
// replicates are scheduled across threads.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace rsn {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Ten-round Philox 4x32 bijection.
constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

/// 64-bit stream address: a purpose tag in the high bits, an index (usually
/// the replicate number) in the low 40 bits.
struct StreamId {
  std::uint32_t tag = 0;
  std::uint64_t index = 0;

  constexpr std::uint64_t packed() const {
    return (std::uint64_t{tag} << 40) ^ (index & ((std::uint64_t{1} << 40) - 1));
  }
};

class Stream {
 public:
  constexpr Stream(std::uint64_t seed, StreamId id) : Stream(seed, id.packed()) {}

  constexpr Stream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  constexpr std::uint64_t next_u64() {
    if (lane_ == 2) refill();
    return buffer_[lane_++];
  }

  /// Uniform on the open interval (0,1). The 2^52 lattice points
  /// (k + 1/2) 2^-52 are exactly representable and symmetric about 1/2, so
  /// 1 - uniform() is exact and has the same law.
  double uniform() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  double exponential() { return -std::log(uniform()); }

  /// Standard normal by Box-Muller; the second variate of each pair is kept.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  constexpr std::uint64_t seed() const {
    return (std::uint64_t{key_[1]} << 32) | key_[0];
  }
  constexpr std::uint64_t stream_id() const { return stream_; }

  /// Number of 128-bit blocks consumed so far.
  constexpr std::uint64_t blocks_used() const { return block_; }

 private:
  constexpr void refill() {
    const PhiloxCounter out = philox4x32_10(
        {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
        key_);
    buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++block_;
    lane_ = 0;
  }

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int lane_ = 2;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stream purpose tags. Distinct tags keep simulation, reference and
/// resampling draws statistically independent under one master seed.
namespace tags {
inline constexpr std::uint32_t kSimulation = 0x100;
inline constexpr std::uint32_t kReference = 0x200;
inline constexpr std::uint32_t kReversal = 0x300;
inline constexpr std::uint32_t kPermutation = 0x400;
inline constexpr std::uint32_t kPathDump = 0x500;
}  // namespace tags

}  // namespace rsn
