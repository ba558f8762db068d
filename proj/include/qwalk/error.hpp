//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number, 0 if unknown.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Well-formed input whose content violates a structural rule
/// (asymmetric matrix, negative weight, self-loop).
class FormatError : public ParseError {
public:
  using ParseError::ParseError;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class IndexError : public Error {
public:
  using Error::Error;
};

class AttributeError : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace qwalk
