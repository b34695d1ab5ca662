#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordsim {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses to exit codes, so keep the hierarchy flat and meaningful.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data problems: malformed files, ambiguous mappings, empty inputs.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : DataError(what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class AmbiguityError : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

// A model or embedding was trained against a different lexicon.
class BindingError : public DataError {
 public:
  using DataError::DataError;
};

// Invalid hyper-parameters or option combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// Metric parameters out of range (gram length 0, empty string for padding).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The metric is mathematically undefined for the given inputs.
class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf detected in activations, losses, or parameters.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace wordsim
