#pragma once

#include <stdexcept>
#include <string>

namespace vpth {

// Invalid input (out-of-domain argument, bad configuration).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical procedure failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed CLI input (flag values, grid specs, unit suffixes).
class ParseError : public std::invalid_argument {
public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace vpth
