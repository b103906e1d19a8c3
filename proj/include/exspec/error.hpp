#pragma once

#include <stdexcept>
#include <string>

namespace exspec {

/// Root of the library's exception hierarchy. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range (q ∉ (0,1), |φ| ≥ 1, s too wide, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed or empty input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A closed-form denominator vanishes (sin(λ/2) ≈ 0 and friends).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// The data admit no estimate, e.g. no threshold exceedances.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside every supported closed-form case.
class UnsupportedCaseError : public Error {
 public:
  using Error::Error;
};

}  // namespace exspec
