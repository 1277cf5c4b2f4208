#pragma once

#include <stdexcept>
#include <string>

namespace facto {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated instance invariant, reported with the JSON-pointer-like field path.
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Malformed document. The position is a byte offset for syntax errors or a
/// field path for structural ones (unknown tag, wrong type, missing field).
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error("parse error at byte " + std::to_string(offset) + ": " + what), position_(std::to_string(offset)) {}
  ParseError(std::string path, const std::string& what)
      : Error("parse error at " + (path.empty() ? std::string("/") : path) + ": " + what), position_(std::move(path)) {}
  const std::string& position() const noexcept { return position_; }

 private:
  std::string position_;
};

/// A reduction or solver applied to an instance outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The solver state cap was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace facto
