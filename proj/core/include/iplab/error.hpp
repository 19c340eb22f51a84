#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iplab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or lengths that do not compose.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Out-of-domain scalar parameter (stddev <= 0, scale <= 0, beta <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A distribution, channel or config that fails its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A value that should have been (numerically) real or finite was not.
class NumericIntegrityError : public Error {
 public:
  using Error::Error;
};

/// D(p||q) with q(x) = 0 where p(x) > 0.
class InfiniteDivergenceError : public Error {
 public:
  using Error::Error;
};

/// A ratio whose denominator is zero.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// Operation applied to an object in the wrong state (e.g. transforming twice).
class StateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Text input that could not be parsed; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Binary input that could not be decoded; carries the byte offset.
class FormatError : public Error {
 public:
  FormatError(std::size_t offset, const std::string& what)
      : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class TrainingDivergedError : public Error {
 public:
  TrainingDivergedError(int epoch, const std::string& what)
      : Error("training diverged at epoch " + std::to_string(epoch) + ": " + what),
        epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace iplab
