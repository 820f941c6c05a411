#pragma once

#include <stdexcept>
#include <string>

namespace rsn {

/// Malformed or out-of-range configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters are individually valid but violate a theorem's hypotheses
/// (CLI exit code 3).
class InadmissibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested run would exceed the configured shot budget (CLI exit code 4).
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsn
