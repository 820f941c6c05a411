#pragma once

// Scenario files are INI documents with sections [law], [response], [regime],
// [grid] and [run]. Every key is checked against its section (and, for law
// and response, the chosen family); anything unknown is a ConfigError.
//
//   [law]       family = exponential | uniform | gamma | pareto
//               rate, a, b, shape, alpha, scale
//   [response]  family = power | exp | window | constant | pareto_tail
//               beta, offset, rate, a, b, value, alpha, scale, multiplier
//   [regime]    kind = NOSCALE_DRI | NOSCALE_CENTERED | A1 | A2 | A3 | D4
//               alpha, beta, unchecked_hypotheses
//   [grid]      u = 0.5, 1, 2    t = 100, 1000
//   [run]       replicates, seed, tests, delay, significance, z_threshold,
//               mean_abs_tolerance, max_shots, reference_replicates,
//               reference_mesh, truncation, reference_shift, energy_sample,
//               permutations

#include <iosfwd>
#include <string>

#include "rsn/verify.hpp"

namespace rsn {

Scenario parse_config(std::istream& in);
Scenario load_config(const std::string& path);

/// Canonical text of a scenario; parse_config(echo_config(s)) reproduces s.
std::string echo_config(const Scenario& scenario);

}  // namespace rsn
