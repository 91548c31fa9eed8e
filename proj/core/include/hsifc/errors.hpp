#pragma once

#include <stdexcept>
#include <string>

namespace hsifc {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input data: bad header fields, truncated or
/// oversized raw files, ragged CSV rows, corrupt model files.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Input is recognizable but uses a feature outside the supported subset
/// (e.g. a BIL-interleaved raster or an unknown sample data type).
class UnsupportedFormatError : public FormatError {
public:
    using FormatError::FormatError;
};

/// Invalid run configuration or command usage. The CLI maps this to exit
/// code 2; every other Error maps to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// API contract violation: dimension mismatch, empty dataset, out-of-range
/// argument, wrong network mode.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace hsifc
