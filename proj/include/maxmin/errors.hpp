#pragma once

#include <stdexcept>
#include <string>

namespace maxmin {

/// Argument outside the domain where a quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative method did not reach its tolerance within the budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reserve distribution gives a non-convex pointwise problem.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MonotonicityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MeanMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace maxmin
