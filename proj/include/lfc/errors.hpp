#pragma once

#include <stdexcept>
#include <string>

namespace lfc {

// Base of every error thrown by the library. The CLI maps the two
// families below onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (bad order, point left of the
// center, mismatched series, pole of gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

class MismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A user-supplied callable threw or returned a non-finite value.
class EvaluationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Constant input to the Hoelder estimator; no finite log-log slope.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Numerical procedure gave up before meeting its stopping rule.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// No sign change of a mean-value residual at maximum grid refinement.
class NotFoundError : public NonConvergenceError {
 public:
  using NonConvergenceError::NonConvergenceError;
};

}  // namespace lfc
