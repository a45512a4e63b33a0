#pragma once

#include <stdexcept>
#include <string>

namespace mirnoise {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested mass/thickness pair does not describe a sphere segment (R <= h0).
class InfeasibleGeometry : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a function (radius off the mirror, zero frequency, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter set (non-positive density, malformed sweep, ...).
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// Numerical quadrature did not reach its tolerance.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// A recurrence left the representable floating-point range.
class RecurrenceInstability : public Error {
public:
    using Error::Error;
};

}  // namespace mirnoise
