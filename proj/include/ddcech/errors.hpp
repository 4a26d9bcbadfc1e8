#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddcech {

// Base of every error raised by the library. Subclasses exist so callers can
// branch on the failure kind; the message always carries the details.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AsymmetryError : public Error {
 public:
  using Error::Error;
};

class NegativeDistanceError : public Error {
 public:
  using Error::Error;
};

class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t i, std::size_t j, std::size_t k, const std::string& what)
      : Error(what), witness_{i, j, k} {}

  // (i, j, k) with d(i,k) > d(i,j) + d(j,k).
  const std::array<std::size_t, 3>& witness() const { return witness_; }

 private:
  std::array<std::size_t, 3> witness_;
};

class CoordMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptySimplex : public Error {
 public:
  using Error::Error;
};

class EmptySupport : public Error {
 public:
  using Error::Error;
};

class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonPositiveP : public Error {
 public:
  using Error::Error;
};

class MissingCoordinates : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class DowkerConditionViolation : public Error {
 public:
  using Error::Error;
};

class NotDownwardClosed : public Error {
 public:
  using Error::Error;
};

class InvalidStaircase : public Error {
 public:
  using Error::Error;
};

class InvalidShift : public Error {
 public:
  using Error::Error;
};

class NonMonotonePath : public Error {
 public:
  using Error::Error;
};

class NotAnInclusion : public Error {
 public:
  using Error::Error;
};

class SupportTooLarge : public Error {
 public:
  using Error::Error;
};

class DifferentSpaces : public Error {
 public:
  using Error::Error;
};

class EmptyTarget : public Error {
 public:
  using Error::Error;
};

class InvalidEmbedding : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ddcech
