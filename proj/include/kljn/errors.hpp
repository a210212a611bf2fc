#pragma once

#include <stdexcept>
#include <string>

namespace kljn {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative
/// temperature, non-positive resistance, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A resistor quad violating its invariants (H must exceed L at each party).
struct InvalidQuadError : Error {
    using Error::Error;
};

/// A solve that succeeded numerically but produced a non-positive resistance
/// or mean-square level.
struct UnphysicalSolutionError : Error {
    using Error::Error;
};

/// Inconsistent or unusable configuration (singular system, bad config file,
/// attack requested on a pair whose secure states do not match).
struct ConfigurationError : Error {
    using Error::Error;
};

/// Operation called with arguments that do not fit together, e.g. an
/// estimator for one attack handed a trace of the other.
struct UsageError : Error {
    using Error::Error;
};

/// A report sink or config source that cannot be read or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace kljn
