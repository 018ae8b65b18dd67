#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forcecert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Operands (or matrix entries) belong to different field instances.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotBipartite : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A weighted matrix does not have the support of its host graph.
class SupportError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace forcecert
