#ifndef SZANR_ERRORS_HPP
#define SZANR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace szanr {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidCoordinateError : public Error {
public:
  using Error::Error;
};

class OutOfGridError : public Error {
public:
  using Error::Error;
};

// Earthquake magnitude beyond the last model band.
class OutOfModelError : public Error {
public:
  using Error::Error;
};

class TopologyError : public Error {
public:
  using Error::Error;
};

// Relocation plan inconsistent with the topologies it claims to describe.
class PlanError : public Error {
public:
  using Error::Error;
};

// File-format error with source location.
class ParseError : public Error {
public:
  ParseError(std::string file, long line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  long line() const { return line_; }

private:
  std::string file_;
  long line_;
};

}  // namespace szanr

#endif  // SZANR_ERRORS_HPP
