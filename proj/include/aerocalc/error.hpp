#pragma once

#include <stdexcept>
#include <string>

namespace aerocalc {

/// Raised when an input violates an operation's preconditions. `field()` names
/// the offending input so front ends can point at the right flag or key.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(message) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::string field_;
  std::string message_;
};

}  // namespace aerocalc
