#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fockalg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: mismatched generator counts, non-Hermitian input, ...
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Input outside the mathematical domain of an operation (|λ| ≥ 1, indefinite
/// matrix under a square root, a tuple that is not a row contraction).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A caller-checked precondition failed (e.g. the tuple does not annihilate the
/// generators of an ideal).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Gram/kernel matrix not numerically positive definite: interpolation nodes
/// too close together or too close to the sphere.
class SingularGramError : public Error {
public:
    using Error::Error;
};

/// Truncated state space larger than the configured cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Sink for non-fatal diagnostics (clamped eigenvalues, uncertified tails).
using Warnings = std::vector<std::string>;

}  // namespace fockalg
