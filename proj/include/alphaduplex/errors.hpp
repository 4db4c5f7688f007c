#pragma once

#include <stdexcept>
#include <string>

namespace alphaduplex {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A base station could not be given an active UE within the candidate cap.
class StarvationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// T_ul - T_dl keeps one sign over the whole sweep.
class NoCrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace alphaduplex
