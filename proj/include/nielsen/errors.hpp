#pragma once

#include <stdexcept>
#include <string>

namespace nielsen {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible groups (parent or shape mismatch).
class ShapeMismatch : public Error {
public:
  using Error::Error;
};

/// A group presentation or homomorphism violates its invariants.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A query falls outside the hypotheses of the theorem that answers it.
class ConstraintViolation : public Error {
public:
  using Error::Error;
};

/// The database lacks an entry the computation needs. `missing()` names it.
class InsufficientData : public Error {
public:
  explicit InsufficientData(std::string missing)
      : Error("insufficient data: missing " + missing), missing_(std::move(missing)) {}

  const std::string& missing() const noexcept { return missing_; }

private:
  std::string missing_;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

/// Internal consistency check failed (e.g. two table rows fired at once).
class LogicFailure : public Error {
public:
  using Error::Error;
};

}  // namespace nielsen
