#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrview {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file content. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric parameter (topic count, threshold, C, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

// The model cannot be built or queried in the requested configuration.
class ModelError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Bad configuration or command-line usage; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace corrview
