#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dtcmc {

// Bad input data (parameters, scenario fields). `field` names the offending
// entry when one is known, e.g. "machine.Lm".
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : std::invalid_argument(field.empty() ? what : field + ": " + what),
        detail_(what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }
  // Message without the field prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::string field_;
};

// Argument outside the mathematical domain of an operation (zero vector
// angle, duty angle outside the sector, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Plant integration left the safe envelope.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtcmc
