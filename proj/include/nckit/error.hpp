#pragma once

#include <stdexcept>
#include <string>

namespace nckit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that violate an operation's preconditions.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but carries no usable information (e.g. an all-zero table).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite value or would overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A detection model cannot explain observed data (zero predicted probability
/// at an observed outcome).
class ModelSupportError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or schema violation.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace nckit
