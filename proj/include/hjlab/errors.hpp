#pragma once

#include <stdexcept>
#include <string>

namespace hjlab {

// Invalid parameters or inconsistent inputs. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation left the region where its discretization is valid, e.g. a
// minimizer touched the edge of a co-moving window.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hjlab
