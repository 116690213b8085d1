#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

/// Invalid argument or precondition violation (bad site, wrong sector, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to meet its accuracy contract.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xxz
