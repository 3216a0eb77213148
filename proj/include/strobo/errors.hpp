#pragma once

#include <stdexcept>
#include <string>

namespace strobo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: unreadable files, bad JSON shapes, wrong argument counts.
/// The CLI maps this to exit code 2.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A domain invariant does not hold: non-Hermitian observable, negative rate,
/// trace-deficient state, dimension mismatch. CLI exit code 3.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// A mathematical condition failed: singular systems, solver breakdown,
/// unmet reconstructibility or time-grid conditions. CLI exit code 4.
class MathError : public Error {
public:
    using Error::Error;
};

/// The observable set's Krylov subspaces (with the identity) do not span the
/// space of self-adjoint operators, so the record cannot determine the state.
class NotReconstructibleError : public MathError {
public:
    using MathError::MathError;
};

/// The measurement time grid makes det[alpha_k(t_j)] vanish, so the
/// per-observable linear systems are singular.
class SingularTimeGridError : public MathError {
public:
    using MathError::MathError;
};

} // namespace strobo
