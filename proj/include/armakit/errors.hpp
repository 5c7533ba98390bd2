#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace armakit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

/// A recursion or factorisation lost definiteness / hit a singular step.
class NumericalDegeneracyError : public Error {
public:
    using Error::Error;
};

/// Input carries no information (zero variance, singular design).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class NonStationaryError : public Error {
public:
    using Error::Error;
};

/// Parameters violate stationarity or invertibility.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class AlignmentError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// CSV ingestion failure. `line` is the 1-based physical line in the file
/// (0 when the error is not tied to a line).
class IngestionError : public Error {
public:
    IngestionError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace armakit
