#pragma once

#include <stdexcept>
#include <string>

namespace oedflow {

/// Base class for numerical aborts (singular matrices, non-finite state).
/// The CLI maps these to exit code 2; config problems map to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularFisher : public NumericError {
 public:
  SingularFisher(const std::string& what, double smallest_eigenvalue)
      : NumericError(what + " (smallest eigenvalue " +
                     std::to_string(smallest_eigenvalue) + ")"),
        smallest_eigenvalue_(smallest_eigenvalue) {}

  double smallest_eigenvalue() const { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

class SingularHessian : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularOperator : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonFiniteParameter : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonFiniteState : public NumericError {
 public:
  using NumericError::NumericError;
};

class HessUnavailable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oedflow
