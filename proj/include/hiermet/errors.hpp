#pragma once

#include <stdexcept>

namespace hiermet {

/// Bad invocation: unknown flags or values, unreadable manifest.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with the data being analyzed: missing or unreadable paths.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid profile definition or configuration file contents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric that is mathematically undefined for the given inputs.
class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hiermet
