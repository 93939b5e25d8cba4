#pragma once

#include <stdexcept>
#include <string>

namespace fblrelay {

// Raised when an iterative numerical method (series, continued fraction,
// adaptive quadrature) fails to reach the requested tolerance within its
// evaluation budget.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by config parsing/validation. `field` carries the dotted path of
// the offending field, e.g. "sweep.step".
class config_error : public std::runtime_error {
 public:
  config_error(std::string field_path, const std::string& what)
      : std::runtime_error(field_path.empty() ? what : field_path + ": " + what),
        field(std::move(field_path)) {}
  std::string field;
};

}  // namespace fblrelay
