#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coarsebox {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different box spaces.
class MismatchedSpaceError : public Error {
 public:
  MismatchedSpaceError() : Error("operands are defined on different box spaces") {}
};

/// A relation that must contain the diagonal does not.
class MissingDiagonalError : public Error {
 public:
  MissingDiagonalError() : Error("relation does not contain the diagonal") {}
};

/// Power iteration hit its iteration cap; `last_estimate` is the final Rayleigh value.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double last_estimate, std::size_t iterations)
      : Error("power iteration did not converge after " + std::to_string(iterations) +
              " iterations (last estimate " + std::to_string(last_estimate) + ")"),
        last_estimate(last_estimate),
        iterations(iterations) {}

  double last_estimate;
  std::size_t iterations;
};

/// Exhaustive enumeration was requested on a ball larger than the cap.
class CapExceededError : public Error {
 public:
  CapExceededError(std::size_t component, std::size_t center, std::size_t ball_size, std::size_t cap)
      : Error("component " + std::to_string(component) + ": ball around point " +
              std::to_string(center) + " has " + std::to_string(ball_size) +
              " points, above the exhaustive cap of " + std::to_string(cap)),
        component(component),
        center(center),
        ball_size(ball_size) {}

  std::size_t component;
  std::size_t center;
  std::size_t ball_size;
};

/// Malformed space file; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}

  std::size_t line;
};

}  // namespace coarsebox
