#ifndef ARGGRAD_ERRORS_HPP
#define ARGGRAD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arggrad {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model/region validation and parsing problems (CLI exit code 2).
struct InvalidModel : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t line;
  ParseError(std::size_t line_number, const std::string& what)
      : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
};

struct NonMonotone : ParseError {
  using ParseError::ParseError;
};

struct DegreeTooLarge : InvalidModel {
  using InvalidModel::InvalidModel;
};

// Numeric failures during evaluation (CLI exit code 3).
struct NumericError : Error {
  using Error::Error;
};

struct DivisionByZero : NumericError {
  using NumericError::NumericError;
};

struct PoleHit : NumericError {
  using NumericError::NumericError;
};

struct NearSingularity : NumericError {
  using NumericError::NumericError;
};

struct UndefinedArgument : NumericError {
  using NumericError::NumericError;
};

struct TruncationTooSmall : NumericError {
  using NumericError::NumericError;
};

struct RegionTouchesSingularity : NumericError {
  using NumericError::NumericError;
};

}  // namespace arggrad

#endif
