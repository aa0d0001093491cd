#pragma once

#include <stdexcept>
#include <string>

namespace optmed {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data is structurally unusable (constant column, collinear composite, ...).
// The CLI maps these to exit code 3.
struct DegenerateData : Error {
  using Error::Error;
};

struct ZeroVarianceColumn : DegenerateData {
  explicit ZeroVarianceColumn(const std::string& column)
      : DegenerateData("zero-variance column: " + column), column(column) {}
  std::string column;
};

struct NonFiniteInput : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct DegenerateTreatment : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct DegenerateComposite : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct DegeneratePath : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct InsufficientDf : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct RegimeUnsupported : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct SingularMetric : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct ZeroPathVector : DegenerateData {
  using DegenerateData::DegenerateData;
};

struct InvalidCosine : DegenerateData {
  using DegenerateData::DegenerateData;
};

// Numeric failure: the algebra itself broke down. CLI exit code 4.
struct NumericError : Error {
  using Error::Error;
};

struct FactorisationFailure : NumericError {
  using NumericError::NumericError;
};

struct ZeroKernel : NumericError {
  using NumericError::NumericError;
};

// Schema / format problems on serialized artefacts. CLI exit code 2.
struct SchemaError : Error {
  using Error::Error;
};

struct SchemaMismatch : SchemaError {
  using SchemaError::SchemaError;
};

struct FeatureOrderMismatch : SchemaError {
  using SchemaError::SchemaError;
};

struct ParseError : SchemaError {
  using SchemaError::SchemaError;
};

}  // namespace optmed
