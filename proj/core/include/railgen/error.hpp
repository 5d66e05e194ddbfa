#pragma once

#include <stdexcept>
#include <string>

namespace railgen {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, violated preconditions.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File access and encode/decode failures.
class IoError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened or read at all.
class FileAccessError : public IoError {
public:
    using IoError::IoError;
};

/// A file was readable but its contents are not a valid image
/// (malformed header, truncated pixel data, unsupported layout).
class DecodeError : public IoError {
public:
    using IoError::IoError;
};

/// Track detection failed ("rail not found", "no convergence").
class DetectError : public Error {
public:
    using Error::Error;
};

/// A dataset build found no frame it could use.
class NoInputError : public Error {
public:
    using Error::Error;
};

} // namespace railgen
