#pragma once

#include <stdexcept>
#include <string>

namespace semtrade {

// Operation received arguments that violate its contract.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems in a config file: unknown keys, malformed values, bad sections.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem or stream failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semtrade
