#pragma once

#include <stdexcept>
#include <string>

namespace parhyp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the valid domain of an operation (radius out of range,
// |c| > 1, invalid annulus, ...).
struct DomainError : Error {
    using Error::Error;
};

// Tabulated data too coarse for the requested accuracy.
struct InterpolationError : Error {
    using Error::Error;
};

// A numeric procedure failed its own tolerance (root solve, inversion).
struct NumericalError : Error {
    using Error::Error;
};

struct SubdivisionLimitError : Error {
    using Error::Error;
};

// Integrand returned NaN/Inf away from a declared singular endpoint.
struct NonFiniteValueError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

// Problem's bound directions do not match the corollary being applied.
struct HypothesisMismatchError : Error {
    using Error::Error;
};

// Mutually exclusive theorem branches both fired: inconsistent input.
struct ConsistencyError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

struct UnknownExampleError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace parhyp
