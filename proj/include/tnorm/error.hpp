#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tnorm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation outside its mathematical domain (e.g. Zero raised to a non-positive power).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Level not in the configured lattice, or an embedding between non-dividing levels.
class LatticeError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Operands built over different descriptors, towers or base fields.
class SideMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tnorm
