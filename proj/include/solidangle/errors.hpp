#pragma once

#include <stdexcept>
#include <string>

namespace solidangle {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis columns are linearly dependent, or the Gram matrix is not
// positive definite (exactly for rational input, within tolerance for
// float input).
struct SingularBasis : Error {
    using Error::Error;
};

// Predicted enumeration count exceeds the configured cap; the input is
// degenerate or adversarial.
struct RadiusTooLarge : Error {
    using Error::Error;
};

// Flat or impossible spherical triangle (a half-angle factor is <= 0,
// or the triple product vanishes).
struct DegenerateTriangle : Error {
    using Error::Error;
};

// No sign assignment satisfies the normalized angle window. Existence is
// guaranteed for minima-attaining bases, so this signals a bug upstream
// and is surfaced rather than ignored.
struct NormalizationFailure : Error {
    using Error::Error;
};

// A branch-specific operation was called while the other branch is active.
struct BranchMismatch : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation by more than
// the silent-clamp tolerance.
struct DomainError : Error {
    using Error::Error;
};

// The two closed-form solid-angle routes disagree beyond tolerance.
struct CrossOracleMismatch : Error {
    using Error::Error;
};

// A rejection-sampling generator exceeded its resample budget.
struct RejectionOverflow : Error {
    using Error::Error;
};

// Malformed input file or inline matrix.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace solidangle
