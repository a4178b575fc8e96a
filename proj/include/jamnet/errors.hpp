#pragma once

#include <stdexcept>
#include <string>

namespace jamnet {

/// Base class for every input/validation failure raised by the library.
/// The CLI maps these to exit code 2; anything else is an internal bug.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Sizes of related inputs disagree (ragged matrices, wrong vector lengths).
class DimensionMismatch : public ValidationError {
  using ValidationError::ValidationError;
};

/// Effective gain a = sum_i phi_i alpha_i is not strictly positive.
class DegenerateModel : public ValidationError {
  using ValidationError::ValidationError;
};

/// The derived jammer gain vector b has a negative entry.
class NegativeGain : public ValidationError {
  using ValidationError::ValidationError;
};

/// b^T b = 0: the jammer has no coupling into the fused signal.
class ZeroJammerChannel : public ValidationError {
  using ValidationError::ValidationError;
};

/// A scalar or vector parameter is outside its documented range.
class ParameterOutOfRange : public ValidationError {
  using ValidationError::ValidationError;
};

/// The profile does not belong to the closed-form equilibrium family.
class NotInFamily : public ValidationError {
  using ValidationError::ValidationError;
};

/// Initial jammer strategy exceeds the power budget.
class InfeasibleInitial : public ValidationError {
  using ValidationError::ValidationError;
};

/// Covariance matrix is not symmetric PSD within tolerance, or its trace
/// exceeds the power budget.
class InvalidCovariance : public ValidationError {
  using ValidationError::ValidationError;
};

/// Trial count is not a positive integer.
class InvalidTrials : public ValidationError {
  using ValidationError::ValidationError;
};

}  // namespace jamnet
