#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace misere {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An id that does not name a form in the arena.
class InvalidHandle : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input was violated (e.g. parts of a unit).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but beyond what can be computed or represented.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class LoadError : public Error {
 public:
  using Error::Error;
};

class MalformedFile : public LoadError {
 public:
  using LoadError::LoadError;
};

class ChecksumMismatch : public LoadError {
 public:
  using LoadError::LoadError;
};

class VersionMismatch : public LoadError {
 public:
  using LoadError::LoadError;
};

/// An internal cross-check failed; indicates a bug rather than bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace misere
