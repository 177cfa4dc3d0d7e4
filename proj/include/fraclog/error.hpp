#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fraclog {

// Argument outside the mathematical domain of an operation, or a violated
// type invariant (r <= 0, alpha outside (0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// a = b = c = 0: every state is an equilibrium.
class DegenerateModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The caller broke an operation precondition that is not a plain domain
// check (classifying a non-root, asking for an order without an oracle).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Floating point could not deliver the promised accuracy (Gamma overflow,
// Mittag-Leffler series cancellation or non-convergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solution magnitude exceeded the blow-up threshold at step `index`.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(std::int64_t index, double value)
      : std::runtime_error("solution blew up at step " + std::to_string(index) +
                           " (|u| = " + std::to_string(value) + ")"),
        index_(index),
        value_(value) {}

  std::int64_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::int64_t index_;
  double value_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraclog
