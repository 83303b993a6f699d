#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formaltrip {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formal text. `position` is a byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, std::string detail = {});

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// A predicate used with two different arities in one formula.
class ArityError : public Error {
 public:
  ArityError(std::string predicate, std::size_t seen, std::size_t expected);

  const std::string& predicate() const noexcept { return predicate_; }
  std::size_t seen() const noexcept { return seen_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::string predicate_;
  std::size_t seen_;
  std::size_t expected_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace formaltrip
