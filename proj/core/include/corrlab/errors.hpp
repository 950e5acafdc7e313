#pragma once

#include <stdexcept>
#include <string>

namespace corrlab {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data violates a distribution/channel contract. The CLI maps this
// family to exit code 3.
struct ValidationError : Error {
    using Error::Error;
};

struct NegativeMass : ValidationError {
    using ValidationError::ValidationError;
};

struct NotNormalized : ValidationError {
    using ValidationError::ValidationError;
};

struct ShapeMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroConditioningMass : ValidationError {
    using ValidationError::ValidationError;
};

struct OutOfRange : ValidationError {
    using ValidationError::ValidationError;
};

struct Infeasible : ValidationError {
    using ValidationError::ValidationError;
};

struct NotBinary : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateSupport : ValidationError {
    using ValidationError::ValidationError;
};

// A file or stream could not be read as a distribution/channel object.
// Exit code 2 in the CLI.
struct ParseError : Error {
    using Error::Error;
};

// The channel optimizer ran out of evaluations before finding any feasible
// point. Exit code 4 in the CLI.
struct OptimizerBudgetExceeded : Error {
    using Error::Error;
};

} // namespace corrlab
