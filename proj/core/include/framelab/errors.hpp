#ifndef FRAMELAB_ERRORS_HPP
#define FRAMELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace framelab {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched vector/matrix dimensions between conforming arguments.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// A structural invariant failed at construction or load; carries the
// name of the failing invariant for error reports.
class InvariantViolation : public Error {
public:
  InvariantViolation(std::string invariant, const std::string& msg)
      : Error(invariant + ": " + msg), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

private:
  std::string invariant_;
};

// Operation requires a frame but the family's lower bound is below threshold.
class NotAFrameError : public Error {
public:
  explicit NotAFrameError(const std::string& msg) : Error(msg) {}
};

// Gram operator has a numerically nontrivial kernel.
class KernelError : public Error {
public:
  explicit KernelError(const std::string& msg) : Error(msg) {}
};

// Matrix passed as an orthogonal projection fails idempotence, symmetry,
// or the required commutation.
class ProjectionError : public Error {
public:
  explicit ProjectionError(const std::string& msg) : Error(msg) {}
};

// Bad argument values (zero vector, non-monotone parameter list, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Input file cannot be parsed into the problem schema.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A sweep sample escaped its theoretical envelope; indicates a numerical
// or implementation fault, never an expected outcome.
class EnvelopeError : public Error {
public:
  explicit EnvelopeError(const std::string& msg) : Error(msg) {}
};

}  // namespace framelab

#endif  // FRAMELAB_ERRORS_HPP
