#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

/// Thrown when an argument violates a documented precondition.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The polar chart (rho, theta) is singular at rho = 0.
class DegenerateChartError : public DomainError {
public:
  using DomainError::DomainError;
};

/// The requested analysis does not apply to the given input.
class NotApplicableError : public DomainError {
public:
  using DomainError::DomainError;
};

}  // namespace moebius
