#pragma once

#include <stdexcept>
#include <string>

namespace chancode {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class DimMismatchError : public Error {
 public:
  using Error::Error;
};

class BlochOutOfBallError : public Error {
 public:
  using Error::Error;
};

class EtaOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class ProbOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class CountMismatchError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailureError : public Error {
 public:
  using Error::Error;
};

class NotEqualPriorsError : public Error {
 public:
  using Error::Error;
};

class NotResolvableError : public Error {
 public:
  using Error::Error;
};

// Malformed input files, CLI flags, or JSON specs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chancode
