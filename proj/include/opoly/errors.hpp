#pragma once

#include <stdexcept>
#include <string>

namespace opoly {

/// Base of every numerical failure raised by the library.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Argument at a pole of Gamma.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Hypergeometric denominator parameter at a non-positive integer.
class ParameterError : public DomainError {
public:
  using DomainError::DomainError;
};

class ConvergenceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature failed to meet its tolerance.
class NonConvergence : public ConvergenceError {
public:
  using ConvergenceError::ConvergenceError;
};

/// The requested accuracy is not reachable at the working precision.
class PrecisionError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// A quantity that must be positive (or of a prescribed sign) is not.
class SignError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Forward recurrence produced a non-positive value or a vanishing divisor.
class PositivityLost : public NumericalError {
public:
  PositivityLost(const std::string& what, long index)
      : NumericalError(what), index_(index) {}
  long index() const { return index_; }

private:
  long index_;
};

/// Leading Gram minor numerically singular: the orthogonal polynomials do
/// not exist (or are not resolvable) at the requested degree.
class SingularGram : public NumericalError {
public:
  SingularGram(const std::string& what, int degree, double relative_pivot)
      : NumericalError(what), degree_(degree), relative_pivot_(relative_pivot) {}
  int degree() const { return degree_; }
  double relative_pivot() const { return relative_pivot_; }

private:
  int degree_;
  double relative_pivot_;
};

}  // namespace opoly
