#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace normdyn {

/// A parameter or option outside its domain. `field()` names the offending
/// input (e.g. "params.mu").
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)), message_(message) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& reason() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// The chain has a zero transition rate where the stationary law needs it.
class NonErgodicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace normdyn
