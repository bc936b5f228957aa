#pragma once

#include <stdexcept>
#include <string>

namespace qforms {

// Root of the error hierarchy.  The three direct children correspond to the
// CLI exit-code categories: ValidationError -> 2, EngineError -> 3,
// ParseError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data violates a declared invariant (bad structure constants, action
// axioms, groupoid axioms, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A computation cannot proceed on otherwise well-formed data.
struct EngineError : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

struct MismatchedAlgebra : EngineError {
    MismatchedAlgebra() : EngineError("operands live over different generator tables") {}
    using EngineError::EngineError;
};

struct MismatchedGroupoid : EngineError {
    MismatchedGroupoid() : EngineError("cochains belong to different groupoids") {}
    using EngineError::EngineError;
};

struct DegreeMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct InfiniteBasis : EngineError {
    using EngineError::EngineError;
};

struct NotNilpotent : EngineError {
    using EngineError::EngineError;
};

struct ShapeError : EngineError {
    using EngineError::EngineError;
};

struct NotMorphic : ValidationError {
    using ValidationError::ValidationError;
};

struct JacobiFailure : ValidationError {
    using ValidationError::ValidationError;
};

struct NotAnAction : ValidationError {
    using ValidationError::ValidationError;
};

struct WeightNotPreserved : EngineError {
    using EngineError::EngineError;
};

struct NotClosed : EngineError {
    using EngineError::EngineError;
};

struct NotNormalized : EngineError {
    using EngineError::EngineError;
};

struct IndexOutOfRange : EngineError {
    using EngineError::EngineError;
};

} // namespace qforms
