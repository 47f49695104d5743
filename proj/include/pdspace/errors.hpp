#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdspace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two points (or diagrams) from different metric pairs were combined.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

// A descriptor or point violates the model space's definition.
class InvalidSpace : public Error {
 public:
  using Error::Error;
};

class NoProjection : public Error {
 public:
  using Error::Error;
};

class NoGeodesicOracle : public Error {
 public:
  using Error::Error;
};

class NotProper : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset)
      : Error("line " + std::to_string(line) + ", offset " + std::to_string(offset) + ": " + what),
        line_(line),
        offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotCauchy : public Error {
 public:
  using Error::Error;
};

class CoverageGap : public Error {
 public:
  using Error::Error;
};

class EmptyAnnulus : public Error {
 public:
  using Error::Error;
};

}  // namespace pdspace
