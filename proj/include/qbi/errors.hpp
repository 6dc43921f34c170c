#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qbi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested qubit/variable count exceeds the supported cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Qubit index outside the register.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed gate: overlapping target/control or duplicate controls.
class GateError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller misuse: overlapping query/evidence, unknown variable, scope mismatch.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an assignment of zero probability mass.
class ImpossibleEvidenceError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant (normalization) failed after simulation.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Model text could not be read. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Network failed validation; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid network";
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace qbi
