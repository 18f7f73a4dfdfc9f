#pragma once

#include <stdexcept>
#include <string>

namespace ratefp {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problems with user-supplied configuration or input files (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

struct ParseError : ConfigError {
  using ConfigError::ConfigError;
};

struct ValidationError : ConfigError {
  explicit ValidationError(const std::string& field, const std::string& why)
      : ConfigError("invalid field '" + field + "': " + why), field(field) {}
  std::string field;
};

// Plot input lacks the artifacts needed to render anything.
struct MissingArtifact : ConfigError {
  using ConfigError::ConfigError;
};

// Numerical failures at runtime (CLI exit code 3).
struct NumericalError : Error {
  using Error::Error;
};

struct NoEquilibriumFound : NumericalError {
  using NumericalError::NumericalError;
};
struct NoSaddle : NumericalError {
  using NumericalError::NumericalError;
};
struct ComplexEigenvalues : NumericalError {
  using NumericalError::NumericalError;
};
struct RootNotBracketed : NumericalError {
  using NumericalError::NumericalError;
};
struct UnstableStep : NumericalError {
  using NumericalError::NumericalError;
};
struct AllCensored : NumericalError {
  using NumericalError::NumericalError;
};
struct CflViolation : NumericalError {
  using NumericalError::NumericalError;
};
struct SolverDivergence : NumericalError {
  using NumericalError::NumericalError;
};
struct SingularTransform : NumericalError {
  using NumericalError::NumericalError;
};
struct DegenerateMass : NumericalError {
  using NumericalError::NumericalError;
};
struct NoWells : NumericalError {
  using NumericalError::NumericalError;
};
struct InvalidGeometry : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace ratefp
