#pragma once

#include <stdexcept>
#include <string>

namespace rough {

/// Violated precondition on an operation's inputs.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Scenario or solver configuration that cannot be run as requested
/// (unknown keys, CFL violation, missing files).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A trajectory or field exceeded the overflow guard.
struct BlowUpError : std::runtime_error {
  double time;
  explicit BlowUpError(double t)
      : std::runtime_error("state blew up at t=" + std::to_string(t)), time(t) {}
};

/// Iterative refinement failed to reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
  double gap_prev;
  double gap_last;
  ConvergenceError(const std::string& what, double prev, double last)
      : std::runtime_error(what + " (last level gaps " + std::to_string(prev) +
                           ", " + std::to_string(last) + ")"),
        gap_prev(prev), gap_last(last) {}
};

/// A contract the library promises to uphold was observed broken at runtime
/// (e.g. a nonpositive Feynman-Kac weight estimate).
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rough
