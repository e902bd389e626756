#pragma once

#include <stdexcept>

namespace oggn {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension or shape mismatch between operands.
struct ShapeError : Error {
    using Error::Error;
};

/// Evaluation outside a function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

/// Malformed file or unparsable text.
struct ParseError : Error {
    using Error::Error;
};

/// Invalid configuration or argument value.
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical training failure (diverged loss, non-finite values).
struct TrainingError : Error {
    using Error::Error;
};

} // namespace oggn
