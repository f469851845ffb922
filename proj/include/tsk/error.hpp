#pragma once

#include <stdexcept>
#include <string>

namespace tsk {

enum class ErrorKind {
  // configuration / usage
  InvalidConfig,
  InvalidBins,
  InvalidRange,
  MissingLabelColumn,
  // data
  EmptyFile,
  NonNumericCell,
  NonBinaryLabel,
  EmptyRowSet,
  DimensionMismatch,
  LengthMismatch,
  ShapeMismatch,
  SingleClass,
  TooFewSamplesPerClass,
  TooFewPoints,
  EmptyCluster,
  TooManyValues,
  EmptyBatch,
  EmptyList,
  SchemaMismatch,
  RowOutOfRange,
  IoError,
  FormatError,
  // numeric
  NonFiniteLoss,
};

const char* to_string(ErrorKind kind);

// Process exit code for a failure class: 2 usage/config, 3 data, 4 numeric.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tsk
