#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nctorus {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different deformation matrices or matrix sizes.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (axis out of range, non-positive time, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition failed. `defect()` carries the measured value
/// (unitarity defect, projection defect, ...) that exceeded its tolerance.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Inconsistent configuration (Powers-Rieffel parameters, run config, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nctorus
