#pragma once

#include <stdexcept>
#include <string>

namespace sdq {

/// Input violates an operation's domain (dimensions, parameter ranges).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix is numerically rank deficient; carries the offending singular value.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double smallest)
      : std::runtime_error(what), smallest_(smallest) {}
  double smallest_singular_value() const { return smallest_; }

 private:
  double smallest_;
};

/// An exact integer construction would leave the range doubles represent exactly.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No stable filter exists for the requested parameters.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input exceeds the range covered by a scheme's stability guarantee.
class OverrangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical routine failed; carries the residual it reached.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Malformed configuration document; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Could not read or write a file.
class FilesystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdq
