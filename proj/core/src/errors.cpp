#include "riesz/errors.hpp"

#include <cstdio>
#include <string>

namespace riesz {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

NotInImage::NotInImage(double distance, double threshold)
    : Error("vector is not in the image of the operator: distance " + sci(distance) +
            " exceeds " + sci(threshold)),
      distance_(distance),
      threshold_(threshold) {}

NotInConullspace::NotInConullspace(double residual, double threshold)
    : Error("functional does not vanish on the nullspace: residual " + sci(residual) +
            " exceeds " + sci(threshold)),
      residual_(residual),
      threshold_(threshold) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace riesz
