#pragma once

#include <stdexcept>
#include <string>

namespace propa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Invalid scale (wrong length, empty set, out-of-range vertex, ...).
struct ScaleError : Error {
    using Error::Error;
};

// Distinct error for scales violating i in S_i.
struct ScaleCenterError : ScaleError {
    using ScaleError::ScaleError;
};

// LP would exceed the practical dense-tableau ceiling. Carries the
// standard-form dimensions so callers can report what would be required.
struct SizeCeilingError : Error {
    SizeCeilingError(std::string msg, long needed, long ceiling)
        : Error(std::move(msg)), needed_columns(needed), ceiling_columns(ceiling) {}
    long needed_columns;
    long ceiling_columns;
};

// Subset enumeration over a dual-scale set larger than the cap.
struct EnumerationCapError : Error {
    using Error::Error;
};

// An internal cross-check failed (certificates disagree). Should never happen.
struct VerificationError : Error {
    using Error::Error;
};

} // namespace propa
