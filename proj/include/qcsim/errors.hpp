#pragma once

#include <stdexcept>
#include <string>

namespace qcsim {

/// Base of every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain (negative r, eta > 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The squeezing parameter leaves no room for a concealed, decodable signal.
class ThresholdError : public Error {
public:
    using Error::Error;
};

/// A modulation amplitude would fall outside the concealment window.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (empty frames, length mismatch).
class InputError : public Error {
public:
    using Error::Error;
};

/// A protocol step was invoked out of order.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration; the message names the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace qcsim
