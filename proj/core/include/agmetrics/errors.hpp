#pragma once

#include <stdexcept>
#include <string>

namespace agm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document (bad JSON, unknown field, bad date, dangling reference).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (missing file, unreadable path, failed write).
class IoError : public Error {
public:
    using Error::Error;
};

/// A lookup completed but the requested entity does not exist upstream.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Transport-level failure talking to the vulnerability database; retryable.
class NetworkError : public Error {
public:
    using Error::Error;
};

/// Numeric failure inside the chain engine (degenerate row, singular system).
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace agm
