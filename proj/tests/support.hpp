#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rsn/cli.hpp"
#include "rsn/rng.hpp"

namespace rsn::testing {

inline double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

/// |mean(x) - target| in units of the standard error.
inline double mean_z(const std::vector<double>& x, double target) {
  return (mean(x) - target) / std::sqrt(variance(x) / static_cast<double>(x.size()));
}

template <class F>
std::vector<double> draws(std::size_t n, std::uint64_t seed, std::uint32_t tag, F&& f) {
  std::vector<double> out(n);
  Stream stream(seed, StreamId{tag, 0});
  for (double& v : out) v = f(stream);
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rsn_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string log;
};

inline CliResult run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"renewalshot"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  std::ostringstream out;
  std::ostringstream log;
  CliResult r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, log);
  r.out = out.str();
  r.log = log.str();
  return r;
}

}  // namespace rsn::testing
