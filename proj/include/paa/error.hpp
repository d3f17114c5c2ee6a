#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paa {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input: non-normalized probabilities, unknown symbols, bad parameters.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A parse error in a textual pattern; carries the offending character offset.
class ParseError : public ArgumentError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ArgumentError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Input is well formed but uses a feature outside the supported grammar.
class UnsupportedFeature : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// An operation produced a value outside the declared value domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed a configured size guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An iterative procedure did not reach its tolerance within the iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A Markov chain lacks a structural property an operation needs.
class ChainPropertyError : public Error {
 public:
  using Error::Error;
};

}  // namespace paa
