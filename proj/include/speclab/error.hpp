#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

/// Raised when an operation's precondition is violated (degree mismatch,
/// non-Hermitian input, missing coefficient tail, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the time integrator when a tendency turns non-finite.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(double time, const std::string& what)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace speclab
