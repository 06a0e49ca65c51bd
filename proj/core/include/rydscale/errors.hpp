#pragma once

#include <stdexcept>
#include <string>

namespace ryd {

// Bad or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to reach its tolerance (CLI exit code 3).
class NonconvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File read/write failure (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ryd
