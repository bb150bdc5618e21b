#pragma once

#include <stdexcept>
#include <string>

namespace igx {

// Exit codes used by the CLI: 0 ok, 2 config error, 3 missing input,
// 4 numeric failure. Everything else maps to 1.
class Error : public std::runtime_error {
 public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg, 2) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg, 2) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg, 2) {}
};

class ModeError : public Error {
 public:
  explicit ModeError(const std::string& msg) : Error(msg, 2) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg, 2) {}
};

class MissingInputError : public Error {
 public:
  explicit MissingInputError(const std::string& msg) : Error(msg, 3) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg, 4) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg, 1) {}
};

}  // namespace igx
