#pragma once

#include <stdexcept>
#include <string>

namespace bipromethee {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid criterion / problem / parameter configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Unknown alternative or criterion identifier, or index out of range.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Requested object would exceed a size guard (coalition tables, enumerations).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A preference statement that cannot be expressed with linear constraints.
class LinearizationError : public Error {
public:
    using Error::Error;
};

/// A malformed linear program or input document.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A caller-side precondition was not met (e.g. empty compatible set).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace bipromethee
