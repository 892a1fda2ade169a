#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prarg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownArgumentError : public Error {
 public:
  explicit UnknownArgumentError(const std::string& what) : Error("unknown argument: " + what) {}
};

class NotConflictFreeError : public Error {
 public:
  NotConflictFreeError() : Error("argument set is not conflict-free") {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  TimeoutError() : Error("deadline exceeded") {}
};

class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class GraphTooLargeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace prarg
