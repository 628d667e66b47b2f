#pragma once

#include <stdexcept>
#include <string>

namespace wlpdisc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sizes of vectors, points or targets do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exact even-p algorithm was asked for an odd or fractional exponent.
class UnsupportedExponentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size beyond what an evaluator is willing to handle.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A function cannot be represented as a piecewise polynomial.
class RepresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or specification string.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wlpdisc
