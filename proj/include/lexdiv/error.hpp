#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexdiv {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// A metric or score whose defining formula has a zero denominator.
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

// Inconsistent inputs across files (missing books, unpaired rows, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration, detected before any work is done.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexdiv
