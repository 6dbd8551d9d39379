#pragma once

#include <stdexcept>
#include <string>

namespace hcmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation point lies inside the excluded disc/horodisc.
struct InsideDomainError : DomainError {
    using DomainError::DomainError;
};

/// Evaluation point lies outside the surface's base domain.
struct OutsideDomainError : DomainError {
    using DomainError::DomainError;
};

/// Alexandrov reflection requested where the profile slope at the edge is finite.
struct GluingError : DomainError {
    using DomainError::DomainError;
};

/// Boundary curve segments do not chain into closed components.
struct MalformedCurveError : Error {
    using Error::Error;
};

/// Barrier pieces fail their ordering conditions on the sample grid.
struct ConfigError : Error {
    using Error::Error;
};

/// Nonlinear iteration exhausted max_iters above tolerance.
struct NonConvergenceError : Error {
    using Error::Error;
};

} // namespace hcmc
