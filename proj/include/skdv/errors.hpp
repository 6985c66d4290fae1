#ifndef SKDV_ERRORS_HPP
#define SKDV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skdv {

/// Invalid configuration: bad grid sizes, mismatched grids, violated
/// parameter gates. Carries a message naming the offending field.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A symbol or weight evaluated to a non-finite value on the grid.
class NumericalDomainError : public std::domain_error {
public:
  explicit NumericalDomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Raised when a post-step norm exceeds the blow-up threshold or goes
/// non-finite. Carries the time and the offending norm value.
class BlowupError : public std::runtime_error {
public:
  BlowupError(double t, double norm_value, const std::string& which)
      : std::runtime_error("blow-up detected at t=" + std::to_string(t) + ": " + which +
                           " = " + std::to_string(norm_value)),
        t(t), norm_value(norm_value), which(which) {}
  double t;
  double norm_value;
  std::string which;
};

} // namespace skdv

#endif
