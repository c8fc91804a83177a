#pragma once

#include <stdexcept>
#include <string>

namespace probclone {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input vector has (numerically) zero norm.
class ZeroVectorError : public Error {
public:
    using Error::Error;
};

/// Operands live in incompatible spaces (vector dims or matrix orders differ).
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// The state set is linearly dependent where independence is required.
class DependentSetError : public Error {
public:
    using Error::Error;
};

/// The requested efficiency violates the positive-semidefiniteness condition.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// Gram-Schmidt hit a residual below tolerance at the given step (1-based).
class NearDependentError : public Error {
public:
    NearDependentError(const std::string& what, int step)
        : Error(what), step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

/// Target family's pairwise inner products do not match the recorded ones.
class GramMismatchError : public Error {
public:
    using Error::Error;
};

/// A family that must be orthonormal is not.
class NotOrthonormalError : public Error {
public:
    using Error::Error;
};

/// A member index is outside the designated set.
class IndexOutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; the message carries the offending field path.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace probclone
