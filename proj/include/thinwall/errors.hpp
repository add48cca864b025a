#pragma once

#include <stdexcept>
#include <string>

namespace thinwall {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: parameters, configuration, or initial data. The CLI maps
/// these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonPositiveParameter : public ValidationError {
 public:
  explicit NonPositiveParameter(std::string name)
      : ValidationError("non-positive parameter: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class InvalidArgument : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IncompatibleData : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteSource : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class HorizonTooShort : public Error {
 public:
  using Error::Error;
};

class MismatchedTestFunction : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class UnknownKey : public ValidationError {
 public:
  explicit UnknownKey(std::string name)
      : ValidationError("unknown key: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class InvalidValue : public ValidationError {
 public:
  InvalidValue(std::string name, const std::string& detail = {})
      : ValidationError("invalid value for " + name + (detail.empty() ? "" : ": " + detail)),
        name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class IoFailure : public Error {
 public:
  explicit IoFailure(std::string path)
      : Error("i/o failure: " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace thinwall
