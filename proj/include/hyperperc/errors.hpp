#pragma once

#include <stdexcept>
#include <string>

namespace hyperperc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model, percolation or sweep parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Band decomposition or C search failed. `condition()` names the failing
/// predicate (1-based index into the list checked by `check_c_conditions`, or
/// 0 for a recurrence failure).
class DecompositionError : public Error {
 public:
  DecompositionError(const std::string& what, int condition = 0)
      : Error(what), condition_(condition) {}
  int condition() const noexcept { return condition_; }

 private:
  int condition_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated file, or unsupported schema version.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ChecksumError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

/// Structurally readable data that violates a graph invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperperc
