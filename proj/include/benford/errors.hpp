#pragma once

#include <stdexcept>
#include <string>

namespace benford {

/// Raised when an argument lies outside the mathematical domain of an operation
/// (non-positive inputs, digit index 0, prefix length mismatch, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a caller-supplied object fails a consistency check, e.g. a
/// wrapped density that does not integrate to one.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace benford
