#pragma once

#include <stdexcept>
#include <string>

namespace ibex {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent configuration (bad keys, mismatched objects).
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Physically invalid state (negative density or temperature, NaN fields).
struct StateError : Error {
  explicit StateError(const std::string& msg) : Error(msg) {}
};

/// Time-step restriction violated or time integration lost stability.
struct TimeStepError : Error {
  explicit TimeStepError(const std::string& msg) : Error(msg) {}
};

/// Unreadable, corrupt, or incompatible coefficient cache.
struct CacheError : Error {
  explicit CacheError(const std::string& msg) : Error(msg) {}
};

}  // namespace ibex
