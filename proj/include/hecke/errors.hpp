#pragma once

#include <stdexcept>

namespace hecke {

/// Raised for malformed input: unparsable scalars, bad field specs, etc.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for arithmetic domain violations (division by zero, u = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hecke
