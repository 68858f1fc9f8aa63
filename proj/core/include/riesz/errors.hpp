#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace riesz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite entries, empty shapes, non-positive tolerances.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A vector passed to the image-to-conullspace map lies outside Im(A).
class NotInImage : public Error {
 public:
  NotInImage(double distance, double threshold);
  double distance() const noexcept { return distance_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double distance_;
  double threshold_;
};

/// A functional has a component along N(A): no preimage exists.
class NotInConullspace : public Error {
 public:
  NotInConullspace(double residual, double threshold);
  double residual() const noexcept { return residual_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double residual_;
  double threshold_;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

/// Malformed field file. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace riesz
