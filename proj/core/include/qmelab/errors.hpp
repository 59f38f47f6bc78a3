#pragma once

#include <stdexcept>
#include <string>

namespace qmelab {

// Base class for all qmelab errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid user input: bad configuration values, empty or non-finite samples,
// malformed input files, out-of-policy data.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Operands with incompatible dimensions (points or states).
class DimensionMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Requested truncation dimension cannot hold the state at the requested
// tail tolerance.
class TruncationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The recovered reference overlap fell below the configured floor; the
// reference point was ill-chosen for this sample.
class OverlapTooSmallError : public Error {
public:
    using Error::Error;
};

} // namespace qmelab
