// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hardy {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `offset` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside the domain of a sub-expression (log of a non-positive
/// number, division by zero, point on a singular set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-convergence, step underflow, budget).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hardy
