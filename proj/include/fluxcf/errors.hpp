#pragma once

#include <stdexcept>
#include <string>

namespace fluxcf {

/// Invalid mesh sizes, parameters, or CLI options.
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Linear solver breakdown or residual failure.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// Violation of a scheme policy (W-tilde guard, degenerate stencil denominator).
class scheme_error : public std::runtime_error {
 public:
  explicit scheme_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fluxcf
