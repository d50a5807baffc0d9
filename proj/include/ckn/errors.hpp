#pragma once

#include <stdexcept>
#include <string>

namespace ckn {

// Point outside the domain of a map (the origin, for the quasi-conformal map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid sizes, counts, exponents or parameter tuples.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A field returned a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quotient or ratio whose denominator vanished on the grid.
class DegenerateFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The exponent relation produced r < 1.
class UnsupportedParametersError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace ckn
