#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbmve {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operation that needs at least one example was given none.
class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

class InvalidConfigError : public Error {
public:
    using Error::Error;
};

/// Explicit VE tolerance is not a positive finite value.
class ToleranceError : public Error {
public:
    using Error::Error;
};

/// Training reconstruction MSE is zero, so error ratios and the VE
/// filter are undefined.
class DegenerateToleranceError : public Error {
public:
    using Error::Error;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

class InvalidSpecError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed file content; carries the 1-based row/column of the offender.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(what), row_(row), column_(column) {}
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// Value outside [0, 1] (or not finite) where dataset entries are required.
class RangeError : public Error {
public:
    RangeError(const std::string& what, std::size_t row, std::size_t column)
        : Error(what), row_(row), column_(column) {}
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

}  // namespace rbmve
