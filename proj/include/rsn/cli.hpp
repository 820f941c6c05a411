#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace rsn::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kTestsFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kInadmissible = 3;
inline constexpr int kResourceCap = 4;
inline constexpr int kInternalError = 5;

struct RunOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

/// Writes `t,replicate,u,value` rows of the scaled statistic at the largest t.
int cmd_simulate(const RunOptions& options, std::ostream& log);

/// Writes the report as <out> (JSON), <stem>.csv and <stem>.quantiles.csv.
int cmd_verify(const RunOptions& options, std::ostream& log);

/// Evaluates a closed-form quantity: moments, absmoment, Rs, covariance,
/// solve_c or gap.
int cmd_formula(const std::string& name, const std::map<std::string, double>& params,
                bool json, std::ostream& out, std::ostream& log);

/// `k,S_k` epochs of one renewal path over [0, max(u) max(t)].
int cmd_path_dump(const RunOptions& options, std::uint64_t replicate, std::ostream& log);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& log);

}  // namespace rsn::cli
