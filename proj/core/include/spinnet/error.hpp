#pragma once

#include <stdexcept>
#include <string>

namespace spinnet {

enum class ErrorKind {
  InvalidArgument,
  ConstraintViolation,
  DegenerateAngle,
  Domain,
  NonManifold,
  Orientation,
  UnsupportedTopology,
  Disconnected,
  Convergence,
  Infeasible,
  Integration,
  Monodromy,
  Metric,
  Regularity,
  Parity,
  InvalidSpinor,
  Connection,
  Tolerance,
  Construction,
  ClassicalOnly,
  Hypothesis,
  Precondition,
  Degenerate,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), kind_(kind), residual_(residual) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Offending residual when the error comes from a tolerance check.
  double residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

}  // namespace spinnet
