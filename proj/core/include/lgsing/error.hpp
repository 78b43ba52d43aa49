#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgsing {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (polynomials, ring descriptors, documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called on arguments outside its domain
/// (mismatched rings, points off the hypersurface, amplitude already minimal...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An input object failed one of its defining identities.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A construction produced an object that does not satisfy its own contract.
/// Indicates a bug, never bad user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgsing
