#pragma once

#include <stdexcept>
#include <string>

namespace freemin {

/// Raised when a numerical routine fails to converge or produces
/// non-finite values (maps to CLI exit code 3).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed or invalid experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an output file cannot be written (exit code 4).
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freemin
