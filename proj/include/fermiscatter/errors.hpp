#pragma once

#include <stdexcept>
#include <string>

namespace fermiscatter {

// Failure of an iterative numeric procedure (quadrature, root bracketing,
// ODE stepping). Distinct from precondition violations, which throw
// std::domain_error / std::invalid_argument.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fermiscatter
