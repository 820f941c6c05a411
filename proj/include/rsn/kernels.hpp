#pragma once

// Replicate kernels. Replicate i always draws from Stream(seed, {tag, i}), so
// a SampleMatrix depends on (request, seed, tag) only, never on the thread
// count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rsn/parallel.hpp"
#include "rsn/renewal.hpp"
#include "rsn/rng.hpp"
#include "rsn/shotnoise.hpp"

namespace rsn {

/// Replicates x columns, row-major.
struct SampleMatrix {
  std::vector<double> u;
  double t = 0.0;
  std::size_t replicates = 0;
  std::vector<double> values;

  std::size_t columns() const { return u.size(); }
  double at(std::size_t replicate, std::size_t column) const {
    return values[replicate * u.size() + column];
  }
  std::vector<double> column(std::size_t j) const;
};

/// Fills one row per replicate with row(stream, out), out.size() == columns.
template <class Row>
SampleMatrix generate_rows(std::vector<double> u, double t, std::size_t replicates,
                           std::uint64_t seed, std::uint32_t tag, Execution exec, Row&& row) {
  SampleMatrix m;
  m.u = std::move(u);
  m.t = t;
  m.replicates = replicates;
  m.values.assign(replicates * m.u.size(), 0.0);
  const std::size_t width = m.u.size();
  for_each_replicate(replicates, exec, [&](std::size_t i) {
    Stream stream(seed, StreamId{tag, i});
    row(stream, std::span<double>(m.values.data() + i * width, width));
  });
  return m;
}

struct ScaledRequest {
  LimitSpec spec;
  std::vector<double> u;
  double t = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::uint32_t tag = tags::kSimulation;
  DelayKind delay = DelayKind::ZeroDelayed;
  /// Cap on expected shots summed over replicates; ResourceCapError beyond.
  double max_shots = 1e8;
};

/// Expected total shots for the request, from the renewal function.
double expected_total_shots(const ScaledRequest& request);

/// Scaled statistics at u_i t for every replicate (OpenMP over replicates).
SampleMatrix simulate_scaled(const ScaledRequest& request,
                             Execution exec = Execution::Parallel);

/// Plain loop over replicates; the reference the parallel kernel must match.
SampleMatrix simulate_scaled_serial(const ScaledRequest& request);

}  // namespace rsn
